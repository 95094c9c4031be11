#include "doctest.h"

#include "chaosync/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

using namespace chaosync;

TEST_CASE("kaplan_yorke hand values") {
    CHECK(kaplan_yorke({1.0, -0.5, -1.0, -1.0, -1.0, -1.0}) == doctest::Approx(2.5).epsilon(1e-14));
    CHECK(kaplan_yorke({-0.1, -0.2, -0.3, -1.0, -1.0, -1.0}) == 0.0);
    CHECK(kaplan_yorke({1.0, 1.0, 1.0, 1.0, 1.0, 1.0}) == 6.0);
    // partial sums stay non-negative through the last exponent
    CHECK(kaplan_yorke({1.0, -0.1, -0.1, -0.1, -0.1, -0.1}) == 6.0);
    // first exponent exactly zero still counts toward j
    CHECK(kaplan_yorke({0.0, -1.0, -1.0, -1.0, -1.0, -1.0}) == 1.0);
}

TEST_CASE("kaplan_yorke on a reference hyperchaotic spectrum") {
    std::array<double, 6> le = {2.5124, 0.1533, 0.0571, -0.0089, -0.4718, -2.5927};
    CHECK(std::abs(kaplan_yorke(le) - 5.8648) <= 5e-4);
}

TEST_CASE("spectrum of a globally stable parameter set matches the origin eigenvalues") {
    rabinovich_params p;
    p.upsilon = 0.5; // -u < 0
    p.alpha = -0.3;
    p.beta = 0.001;
    p.gamma = -0.2;
    rvec6 init = {0.01, 0.01, 0.01, 0.01, 0.01, 0.01};
    lyapunov_report rep = lyapunov_spectrum(p, init, {100.0, 0.1, 1e-3});

    std::array<double, 6> want = {-0.2, -0.2, -0.3, -0.3, -0.5, -0.5};
    for (int i = 0; i < 6; ++i) CHECK(std::abs(rep.exponents[i] - want[i]) <= 0.05);
    CHECK(rep.dimension == 0.0);
    CHECK(rep.horizon == 100.0);
    CHECK(rep.initial_point == init);
    CHECK(std::is_sorted(rep.exponents.begin(), rep.exponents.end(), std::greater<>()));
}

TEST_CASE("reported dimension equals kaplan_yorke of the reported exponents") {
    rabinovich_params p;
    rvec6 init = {0.01, 0.01, 0.01, 0.01, 0.01, 0.01};
    lyapunov_report rep = lyapunov_spectrum(p, init, {5.0, 0.1, 1e-3});
    CHECK(rep.dimension == kaplan_yorke(rep.exponents));
    CHECK(std::is_sorted(rep.exponents.begin(), rep.exponents.end(), std::greater<>()));
}
