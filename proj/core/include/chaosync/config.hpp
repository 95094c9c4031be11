#pragma once

#include "chaosync/adaptive_sync.hpp"
#include "chaosync/comm.hpp"
#include "chaosync/rabinovich.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace chaosync {

// everything a command needs, with defaults matching the reference experiments
struct experiment_config {
    rabinovich_params params{};
    gain_matrices gains{};
    rvec6 drive_init = {1.0, 1.0, 1.0, 1.0, 1.0, 1.0};
    rvec6 response_init = {3.0, 3.0, 3.0, 3.0, 3.0, 3.0};
    std::array<double, 12> estimate_init{}; // a_hat then b_hat, re/im interleaved

    double step = 1e-3;
    double horizon = 100.0;
    std::size_t sample_every = 1;
    double reorth_interval = 0.1;

    double sync_step = 1e-4;
    std::size_t sync_sample_every = 100;
    double sync_threshold = 1e-2;

    comm_schedule schedule{};
    // communication gains; the sync experiment uses `gains`
    gain_matrices comm_gains{{66.0, 55.0, 77.0}, {0.05, 0.05, 0.05}, {0.05, 0.05, 0.05}};

    double noise_sigma = 0.0;
    std::uint64_t seed = 1;
    std::vector<double> image_noise = {0.03, 0.07, 0.1};
    std::string out_dir = ".";

    cvec3 drive_init_c() const { return complexify(drive_init); }
    cvec3 response_init_c() const { return complexify(response_init); }
    parameter_estimates estimates() const {
        parameter_estimates e;
        rvec6 a, b;
        for (int i = 0; i < 6; ++i) {
            a[i] = estimate_init[i];
            b[i] = estimate_init[6 + i];
        }
        e.a_hat = complexify(a);
        e.b_hat = complexify(b);
        return e;
    }
};

// `key = value` lines, # comments; errors carry path and line number
experiment_config load_config(const std::string& path);
void apply_config_text(experiment_config& cfg, const std::string& text, const std::string& path);

} // namespace chaosync
