#pragma once

#include <array>
#include <complex>

namespace chaosync {

using cplx = std::complex<double>;

// complex state (x, y, z); real embedding order is fixed as
// (x1..x6) = (Re x, Im x, Re y, Im y, Re z, Im z)
using cvec3 = std::array<cplx, 3>;
using rvec6 = std::array<double, 6>;
using mat6 = std::array<std::array<double, 6>, 6>;

struct rabinovich_params {
    double upsilon = -0.03;
    double alpha = 0.5;
    double beta = 0.001;
    double gamma = 0.11;
};

// linear parameter block A = (upsilon, alpha, gamma), nonlinear block B = (0, beta, beta)
inline cvec3 a_block(const rabinovich_params& p) {
    return {cplx(p.upsilon), cplx(p.alpha), cplx(p.gamma)};
}
inline cvec3 b_block(const rabinovich_params& p) {
    return {cplx(0.0), cplx(p.beta), cplx(p.beta)};
}

inline rvec6 realify(const cvec3& s) {
    return {s[0].real(), s[0].imag(), s[1].real(), s[1].imag(), s[2].real(), s[2].imag()};
}
inline cvec3 complexify(const rvec6& s) {
    return {cplx(s[0], s[1]), cplx(s[2], s[3]), cplx(s[4], s[5])};
}

cvec3 rabinovich_rhs_complex(const cvec3& s, const rabinovich_params& p);
rvec6 rabinovich_rhs_real(const rvec6& s, const rabinovich_params& p);

// analytic Jacobian of rabinovich_rhs_real
mat6 jacobian_real(const rvec6& s, const rabinovich_params& p);

// drive rhs decomposition: F diagonal, G vector, H diagonal such that
// F(s)A + G(s) + H(s)B equals rabinovich_rhs_complex(s)
struct fgh_decomposition {
    cvec3 F; // diag(-x, y, z)
    cvec3 G; // (y x* + z y*, -x^2 + 2 x* z, -3 x y)
    cvec3 H; // diag(0, -|y|^2 y, -|z|^2 z)
};
fgh_decomposition fgh_eval(const cvec3& s);

// eigenvalues of the Jacobian at the origin, {-u, -u, a, a, g, g}, sorted descending
std::array<double, 6> equilibrium_eigenvalues(const rabinovich_params& p);

enum class stability { stable, unstable, marginal };
stability classify_stability(const rabinovich_params& p);
const char* to_string(stability s);

} // namespace chaosync
