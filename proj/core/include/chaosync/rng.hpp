#pragma once

#include "chaosync/errors.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace chaosync {

// splitmix64, used to derive independent substream seeds from the run seed
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream_id) {
    std::uint64_t s = seed;
    std::uint64_t out = splitmix64(s);
    for (std::uint64_t i = 0; i <= stream_id; ++i) out = splitmix64(s);
    return out;
}

// standard-normal stream: mt19937_64 + Box-Muller. Both halves of the pair are
// used, and the uniform-to-double mapping is spelled out, so the stream is
// reproducible across platforms for a given seed.
class gaussian_stream {
public:
    explicit gaussian_stream(std::uint64_t seed) : eng_(seed) {}

    double next() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53; // (0,1]
        const double u2 = static_cast<double>(eng_() >> 11) * 0x1.0p-53;         // [0,1)
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

private:
    std::mt19937_64 eng_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

// adds N(0, sigma^2) noise in place; sigma = 0 leaves the data untouched
inline void add_awgn(std::vector<double>& samples, double sigma, gaussian_stream& g) {
    if (sigma < 0.0) throw negative_sigma();
    if (sigma == 0.0) return;
    for (double& x : samples) x += sigma * g.next();
}

inline std::vector<double> awgn(const std::vector<double>& samples, double sigma,
                                std::uint64_t seed) {
    std::vector<double> out = samples;
    gaussian_stream g(seed);
    add_awgn(out, sigma, g);
    return out;
}

} // namespace chaosync
