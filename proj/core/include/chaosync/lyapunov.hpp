#pragma once

#include "chaosync/rabinovich.hpp"

#include <array>

namespace chaosync {

struct lyapunov_report {
    std::array<double, 6> exponents{}; // sorted descending, 1/seconds
    double horizon = 0.0;
    double dimension = 0.0;
    rvec6 initial_point{};
};

struct lyapunov_options {
    double horizon = 100.0;
    double reorth_interval = 0.1;
    double step = 1e-3;
};

// finite-time spectrum from joint state + tangent-basis integration with
// modified Gram-Schmidt reorthonormalization
lyapunov_report lyapunov_spectrum(const rabinovich_params& params, const rvec6& initial,
                                  const lyapunov_options& opt = {});

// Kaplan-Yorke dimension from a descending-sorted spectrum: j is the largest
// count with non-negative partial sum; 0 if the first exponent is negative;
// the full dimension if every partial sum is non-negative
double kaplan_yorke(const std::array<double, 6>& exponents);

} // namespace chaosync
