#include "chaosync/metrics.hpp"

#include "chaosync/errors.hpp"

#include <cmath>
#include <limits>

namespace chaosync {

namespace {

void check_pair(const image_matrix& a, const image_matrix& b) {
    if (!a.same_shape(b)) throw dimension_mismatch("image dimensions differ");
    if (a.rows == 0 || a.cols == 0) throw dimension_mismatch("empty image");
    if (a.pixels.size() != a.rows * a.cols || b.pixels.size() != b.rows * b.cols)
        throw dimension_mismatch("pixel buffer does not match image dimensions");
}

} // namespace

double mse(const image_matrix& a, const image_matrix& b) {
    check_pair(a, b);
    double acc = 0.0;
    for (std::size_t i = 0; i < a.pixels.size(); ++i) {
        const double d = static_cast<double>(a.pixels[i]) - static_cast<double>(b.pixels[i]);
        acc += d * d;
    }
    return acc / static_cast<double>(a.pixels.size());
}

double psnr(const image_matrix& a, const image_matrix& b) {
    const double m = mse(a, b);
    if (m == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(255.0 * 255.0 / m);
}

double ssim(const image_matrix& a, const image_matrix& b, double c1, double c2) {
    check_pair(a, b);
    if (c1 <= 0.0 || c2 <= 0.0) throw config_error("ssim constants must be positive");
    const double n = static_cast<double>(a.pixels.size());
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < a.pixels.size(); ++i) {
        ma += a.pixels[i];
        mb += b.pixels[i];
    }
    ma /= n;
    mb /= n;
    double va = 0.0, vb = 0.0, cov = 0.0;
    for (std::size_t i = 0; i < a.pixels.size(); ++i) {
        const double da = static_cast<double>(a.pixels[i]) - ma;
        const double db = static_cast<double>(b.pixels[i]) - mb;
        va += da * da;
        vb += db * db;
        cov += da * db;
    }
    va /= n;
    vb /= n;
    cov /= n;
    return ((2.0 * ma * mb + c1) * (2.0 * cov + c2)) /
           ((ma * ma + mb * mb + c1) * (va + vb + c2));
}

std::array<std::uint64_t, 256> histogram(const image_matrix& img) {
    std::array<std::uint64_t, 256> counts{};
    for (const std::uint8_t p : img.pixels) ++counts[p];
    return counts;
}

} // namespace chaosync
