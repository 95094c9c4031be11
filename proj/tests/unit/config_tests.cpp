#include "doctest.h"

#include "chaosync/config.hpp"
#include "chaosync/errors.hpp"

#include <string>

using namespace chaosync;

namespace {

std::string error_for(const std::string& text) {
    experiment_config cfg;
    try {
        apply_config_text(cfg, text, "test.cfg");
    } catch (const config_error& e) {
        return e.what();
    }
    return {};
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("defaults") {
    experiment_config cfg;
    CHECK(cfg.params.upsilon == -0.03);
    CHECK(cfg.params.alpha == 0.5);
    CHECK(cfg.params.beta == 0.001);
    CHECK(cfg.params.gamma == 0.11);
    CHECK(cfg.gains.k1 == std::array<double, 3>{66.0, 55.0, 77.0});
    CHECK(cfg.gains.k2 == std::array<double, 3>{13.0, 12.0, 15.0});
    CHECK(cfg.gains.k3 == std::array<double, 3>{15.0, 15.0, 59.0});
    CHECK(cfg.comm_gains.k2 == std::array<double, 3>{0.05, 0.05, 0.05});
    CHECK(cfg.step == 1e-3);
    CHECK(cfg.horizon == 100.0);
    CHECK(cfg.reorth_interval == 0.1);
    CHECK(cfg.sync_step == 1e-4);
    CHECK(cfg.sync_threshold == 1e-2);
    CHECK(cfg.schedule.dwell_seconds == 5.0);
    CHECK(cfg.schedule.sample_period == 2.5e-4);
    CHECK(cfg.schedule.start_time == 20.0);
    CHECK(cfg.schedule.settle_seconds == 2.5);
    CHECK(cfg.schedule.split_fraction == 0.01);
    CHECK(cfg.schedule.modulation == mod_param::upsilon);
    CHECK(cfg.schedule.mask_component == 6);
    CHECK(cfg.seed == 1);
    CHECK(cfg.noise_sigma == 0.0);
    CHECK(cfg.image_noise == std::vector<double>{0.03, 0.07, 0.1});
}

TEST_CASE("keys are applied") {
    experiment_config cfg;
    apply_config_text(cfg,
                      "# comment line\n"
                      "upsilon = -0.5\n"
                      "\n"
                      "k1 = 10 20 30   # inline comment\n"
                      "drive_init = 1 2 3 4 5 6\n"
                      "step = 0.002\n"
                      "mod_param = alpha\n"
                      "mask_component = 2\n"
                      "image_noise = 0.01 0.02\n"
                      "seed = 99\n"
                      "split_fraction = 0.25\n"
                      "out_dir = results\n",
                      "test.cfg");
    CHECK(cfg.params.upsilon == -0.5);
    CHECK(cfg.gains.k1 == std::array<double, 3>{10.0, 20.0, 30.0});
    CHECK(cfg.drive_init == rvec6{1, 2, 3, 4, 5, 6});
    CHECK(cfg.schedule.drive_init == complexify(rvec6{1, 2, 3, 4, 5, 6}));
    CHECK(cfg.step == 0.002);
    CHECK(cfg.schedule.modulation == mod_param::alpha);
    CHECK(cfg.schedule.mask_component == 2);
    CHECK(cfg.image_noise == std::vector<double>{0.01, 0.02});
    CHECK(cfg.seed == 99);
    CHECK(cfg.schedule.split_fraction == 0.25);
    CHECK(cfg.out_dir == "results");
}

TEST_CASE("errors carry the file and line") {
    CHECK(contains(error_for("frobnicate = 1\n"), "test.cfg:1: unknown key 'frobnicate'"));
    CHECK(contains(error_for("upsilon = -0.03\n\nstep = fast\n"), "test.cfg:3:"));
    CHECK(contains(error_for("step = fast\n"), "expected a number"));
    CHECK(contains(error_for("upsilon -0.03\n"), "expected 'key = value'"));
    CHECK(contains(error_for("step =\n"), "missing value"));
    CHECK(contains(error_for("k1 = 1 2\n"), "expected 3 numbers"));
    CHECK(contains(error_for("k1 = 1 0 2\n"), "gains must be positive"));
    CHECK(contains(error_for("drive_init = 1 2 3\n"), "expected 6 numbers"));
    CHECK(contains(error_for("sample_every = 0\n"), "sample_every must be at least 1"));
    CHECK(contains(error_for("split_fraction = 1.5\n"), "split_fraction must lie in (0,1)"));
    CHECK(contains(error_for("mask_component = 9\n"), "mask_component must lie in 1..6"));
    CHECK(contains(error_for("mod_param = delta\n"), "mod_param must be upsilon, alpha, or gamma"));
    CHECK(contains(error_for("step = -1\n"), "must be positive"));
    CHECK(contains(error_for("noise_sigma = -1\n"), "must be non-negative"));
    CHECK(contains(error_for("image_noise = 0.1 -0.2\n"), "image_noise entries must be non-negative"));
    CHECK(contains(error_for("seed = -4\n"), "expected a non-negative integer"));
}

TEST_CASE("load_config reports missing files") {
    CHECK_THROWS_AS(load_config("/nonexistent/chaosync.cfg"), config_error);
}
