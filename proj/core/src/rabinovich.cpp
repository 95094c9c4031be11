#include "chaosync/rabinovich.hpp"

#include <algorithm>

namespace chaosync {

cvec3 rabinovich_rhs_complex(const cvec3& s, const rabinovich_params& p) {
    const cplx x = s[0], y = s[1], z = s[2];
    return {
        -p.upsilon * x + y * std::conj(x) + z * std::conj(y),
        p.alpha * y - x * x + 2.0 * std::conj(x) * z - p.beta * std::norm(y) * y,
        p.gamma * z - 3.0 * x * y - p.beta * std::norm(z) * z,
    };
}

rvec6 rabinovich_rhs_real(const rvec6& s, const rabinovich_params& p) {
    const double x1 = s[0], x2 = s[1], x3 = s[2], x4 = s[3], x5 = s[4], x6 = s[5];
    const double ny = x3 * x3 + x4 * x4;
    const double nz = x5 * x5 + x6 * x6;
    return {
        -p.upsilon * x1 + x1 * x3 + x2 * x4 + x3 * x5 + x4 * x6,
        -p.upsilon * x2 + x1 * x4 - x2 * x3 + x3 * x6 - x4 * x5,
        p.alpha * x3 - (x1 * x1 - x2 * x2) + 2.0 * (x1 * x5 + x2 * x6) - p.beta * ny * x3,
        p.alpha * x4 - 2.0 * x1 * x2 + 2.0 * (x1 * x6 - x2 * x5) - p.beta * ny * x4,
        p.gamma * x5 - 3.0 * (x1 * x3 - x2 * x4) - p.beta * nz * x5,
        p.gamma * x6 - 3.0 * (x1 * x4 + x2 * x3) - p.beta * nz * x6,
    };
}

mat6 jacobian_real(const rvec6& s, const rabinovich_params& p) {
    const double x1 = s[0], x2 = s[1], x3 = s[2], x4 = s[3], x5 = s[4], x6 = s[5];
    const double b = p.beta;
    mat6 J{};
    J[0] = {-p.upsilon + x3, x4, x1 + x5, x2 + x6, x3, x4};
    J[1] = {x4, -p.upsilon - x3, -x2 + x6, x1 - x5, -x4, x3};
    J[2] = {-2.0 * x1 + 2.0 * x5, 2.0 * x2 + 2.0 * x6,
            p.alpha - b * (3.0 * x3 * x3 + x4 * x4), -2.0 * b * x3 * x4,
            2.0 * x1, 2.0 * x2};
    J[3] = {-2.0 * x2 + 2.0 * x6, -2.0 * x1 - 2.0 * x5,
            -2.0 * b * x3 * x4, p.alpha - b * (x3 * x3 + 3.0 * x4 * x4),
            -2.0 * x2, 2.0 * x1};
    J[4] = {-3.0 * x3, 3.0 * x4, -3.0 * x1, 3.0 * x2,
            p.gamma - b * (3.0 * x5 * x5 + x6 * x6), -2.0 * b * x5 * x6};
    J[5] = {-3.0 * x4, -3.0 * x3, -3.0 * x2, -3.0 * x1,
            -2.0 * b * x5 * x6, p.gamma - b * (x5 * x5 + 3.0 * x6 * x6)};
    return J;
}

fgh_decomposition fgh_eval(const cvec3& s) {
    const cplx x = s[0], y = s[1], z = s[2];
    fgh_decomposition d;
    d.F = {-x, y, z};
    d.G = {y * std::conj(x) + z * std::conj(y),
           -x * x + 2.0 * std::conj(x) * z,
           -3.0 * x * y};
    d.H = {cplx(0.0), -std::norm(y) * y, -std::norm(z) * z};
    return d;
}

std::array<double, 6> equilibrium_eigenvalues(const rabinovich_params& p) {
    std::array<double, 6> ev = {-p.upsilon, -p.upsilon, p.alpha, p.alpha, p.gamma, p.gamma};
    std::sort(ev.begin(), ev.end(), std::greater<double>());
    return ev;
}

stability classify_stability(const rabinovich_params& p) {
    const auto ev = equilibrium_eigenvalues(p);
    bool any_pos = false, all_neg = true;
    for (double v : ev) {
        if (v > 0.0) any_pos = true;
        if (!(v < 0.0)) all_neg = false;
    }
    if (all_neg) return stability::stable;
    if (any_pos) return stability::unstable;
    return stability::marginal;
}

const char* to_string(stability s) {
    switch (s) {
        case stability::stable: return "Stable";
        case stability::unstable: return "Unstable";
        default: return "Marginal";
    }
}

} // namespace chaosync
