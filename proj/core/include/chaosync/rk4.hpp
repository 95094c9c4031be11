#pragma once

#include "chaosync/errors.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

namespace chaosync {

struct integration_config {
    double step = 1e-3;
    double t_start = 0.0;
    double t_end = 100.0;
    std::size_t sample_every = 1; // record every k-th step
};

struct trajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> states;
};

namespace detail {
template <class State>
bool all_finite(const State& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}
} // namespace detail

// classical 4-stage step; rhs signature: void(t, const state&, dstate&).
// State is any container of double with size() and operator[] (vector, array).
template <class Rhs, class State>
State rk4_step(Rhs&& rhs, double t, const State& x, double h) {
    const std::size_t n = x.size();
    State k1 = x, k2 = x, k3 = x, k4 = x, tmp = x, out = x;
    rhs(t, x, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k1[i];
    rhs(t + 0.5 * h, tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k2[i];
    rhs(t + 0.5 * h, tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + h * k3[i];
    rhs(t + h, tmp, k4);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = x[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    if (!detail::all_finite(out)) throw non_finite_state(t + h);
    return out;
}

// fixed-step integration; if the horizon is not a multiple of the step, a
// shortened last step lands exactly on t_end. Initial and final states are
// always recorded.
template <class Rhs>
trajectory integrate(Rhs&& rhs, const integration_config& cfg, std::vector<double> initial) {
    trajectory tr;
    double t = cfg.t_start;
    tr.times.push_back(t);
    tr.states.push_back(initial);
    if (cfg.t_end <= cfg.t_start) return tr;

    const double span = cfg.t_end - cfg.t_start;
    const std::size_t nfull = static_cast<std::size_t>(span / cfg.step);
    std::vector<double> x = std::move(initial);
    std::size_t recorded = 0;
    for (std::size_t i = 0; i < nfull; ++i) {
        x = rk4_step(rhs, t, x, cfg.step);
        t = cfg.t_start + static_cast<double>(i + 1) * cfg.step;
        if (++recorded % cfg.sample_every == 0) {
            tr.times.push_back(t);
            tr.states.push_back(x);
        }
    }
    if (t < cfg.t_end - 1e-15 * span) {
        x = rk4_step(rhs, t, x, cfg.t_end - t);
        t = cfg.t_end;
        tr.times.push_back(t);
        tr.states.push_back(x);
    } else if (tr.times.back() != t) {
        tr.times.push_back(t);
        tr.states.push_back(x);
    }
    return tr;
}

} // namespace chaosync
