#include "chaosync/lyapunov.hpp"

#include "chaosync/errors.hpp"

#include <algorithm>
#include <cmath>

namespace chaosync {

namespace {

// state (6) plus tangent basis stored column-wise (36)
struct aug42 {
    std::array<double, 42> v;
};

aug42 rhs42(const aug42& a, const rabinovich_params& p) {
    rvec6 s;
    std::copy_n(a.v.begin(), 6, s.begin());
    const rvec6 ds = rabinovich_rhs_real(s, p);
    const mat6 J = jacobian_real(s, p);
    aug42 out;
    std::copy_n(ds.begin(), 6, out.v.begin());
    for (int col = 0; col < 6; ++col) {
        for (int r = 0; r < 6; ++r) {
            double acc = 0.0;
            for (int c = 0; c < 6; ++c) acc += J[r][c] * a.v[6 + 6 * col + c];
            out.v[6 + 6 * col + r] = acc;
        }
    }
    return out;
}

aug42 step42(const aug42& a, double h, const rabinovich_params& p, double t) {
    const aug42 k1 = rhs42(a, p);
    aug42 tmp;
    for (int i = 0; i < 42; ++i) tmp.v[i] = a.v[i] + 0.5 * h * k1.v[i];
    const aug42 k2 = rhs42(tmp, p);
    for (int i = 0; i < 42; ++i) tmp.v[i] = a.v[i] + 0.5 * h * k2.v[i];
    const aug42 k3 = rhs42(tmp, p);
    for (int i = 0; i < 42; ++i) tmp.v[i] = a.v[i] + h * k3.v[i];
    const aug42 k4 = rhs42(tmp, p);
    aug42 out;
    for (int i = 0; i < 42; ++i)
        out.v[i] = a.v[i] + (h / 6.0) * (k1.v[i] + 2.0 * k2.v[i] + 2.0 * k3.v[i] + k4.v[i]);
    for (double x : out.v)
        if (!std::isfinite(x)) throw non_finite_state(t + h);
    return out;
}

// modified Gram-Schmidt on the 6 tangent columns; accumulates log norms
void reorthonormalize(aug42& a, std::array<double, 6>& log_sums) {
    for (int j = 0; j < 6; ++j) {
        double* vj = &a.v[6 + 6 * j];
        for (int k = 0; k < j; ++k) {
            const double* vk = &a.v[6 + 6 * k];
            double dot = 0.0;
            for (int r = 0; r < 6; ++r) dot += vk[r] * vj[r];
            for (int r = 0; r < 6; ++r) vj[r] -= dot * vk[r];
        }
        double nrm = 0.0;
        for (int r = 0; r < 6; ++r) nrm += vj[r] * vj[r];
        nrm = std::sqrt(nrm);
        log_sums[j] += std::log(nrm);
        const double inv = 1.0 / nrm;
        for (int r = 0; r < 6; ++r) vj[r] *= inv;
    }
}

} // namespace

lyapunov_report lyapunov_spectrum(const rabinovich_params& params, const rvec6& initial,
                                  const lyapunov_options& opt) {
    aug42 a{};
    std::copy(initial.begin(), initial.end(), a.v.begin());
    for (int j = 0; j < 6; ++j) a.v[6 + 6 * j + j] = 1.0; // identity tangent basis

    std::array<double, 6> sums{};
    const long per_block = std::max(1L, std::lround(opt.reorth_interval / opt.step));
    const long nsteps = std::lround(opt.horizon / opt.step);
    double t = 0.0;
    long since = 0;
    for (long i = 0; i < nsteps; ++i) {
        a = step42(a, opt.step, params, t);
        t = static_cast<double>(i + 1) * opt.step;
        if (++since == per_block) {
            reorthonormalize(a, sums);
            since = 0;
        }
    }
    if (since > 0) reorthonormalize(a, sums);

    lyapunov_report rep;
    rep.horizon = opt.horizon;
    rep.initial_point = initial;
    for (int j = 0; j < 6; ++j) rep.exponents[j] = sums[j] / opt.horizon;
    std::sort(rep.exponents.begin(), rep.exponents.end(), std::greater<double>());
    rep.dimension = kaplan_yorke(rep.exponents);
    return rep;
}

double kaplan_yorke(const std::array<double, 6>& exponents) {
    double partial = 0.0;
    int j = 0;
    double partial_at_j = 0.0;
    for (int i = 0; i < 6; ++i) {
        partial += exponents[i];
        if (partial >= 0.0) {
            j = i + 1;
            partial_at_j = partial;
        }
    }
    if (j == 0) return 0.0;
    if (j == 6) return 6.0;
    return j + partial_at_j / std::abs(exponents[j]);
}

} // namespace chaosync
