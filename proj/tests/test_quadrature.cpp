#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "skyrsim/quadrature.hpp"

using namespace skyrsim;

TEST_CASE("single panel is exact for degree-31 polynomials") {
    // int_0^1 x^31 dx = 1/32, the highest degree a 16-point rule must nail.
    const double got = gl16_panel([](double x) { return std::pow(x, 31); }, 0.0, 1.0);
    CHECK(std::abs(got - 1.0 / 32.0) <= 1e-14 / 32.0 + 1e-18);
    const double got2 = gl16_panel([](double x) { return 5.0 * std::pow(x, 30) - 2.0 * x * x; }, -1.0, 2.0);
    const double want2 = 5.0 * (std::pow(2.0, 31) + 1.0) / 31.0 - 2.0 * (8.0 + 1.0) / 3.0;
    CHECK(std::abs(got2 - want2) <= 1e-13 * std::abs(want2));
}

TEST_CASE("empty interval gives zero") {
    CHECK(integrate_0_to(0.0, [](double) { return 42.0; }) == 0.0);
    CHECK(integrate([](double) { return 42.0; }, 3.0, 3.0) == 0.0);
}

TEST_CASE("closed-form oracle: int_0^1 sqrt(1+2y^2) dy") {
    // Antiderivative (y/2) sqrt(1+2y^2) + asinh(sqrt(2) y)/(2 sqrt(2)).
    const double want = 0.5 * std::sqrt(3.0) + std::asinh(std::sqrt(2.0)) / (2.0 * std::sqrt(2.0));
    const double got = integrate_0_to(1.0, [](double y) { return std::sqrt(1.0 + 2.0 * y * y); });
    CHECK(std::abs(got - want) <= 1e-12);
}

TEST_CASE("signed convention for negative upper limit") {
    const double pos = integrate_0_to(1.0, [](double y) { return std::sqrt(1.0 + 2.0 * y * y); });
    const double neg = integrate_0_to(-1.0, [](double y) { return std::sqrt(1.0 + 2.0 * y * y); });
    CHECK(neg == doctest::Approx(-pos).epsilon(1e-14));
}

TEST_CASE("oscillatory integrand converges by panel doubling") {
    const double got = integrate([](double y) { return std::sin(40.0 * y); }, 0.0, 3.0);
    const double want = (1.0 - std::cos(120.0)) / 40.0;
    CHECK(std::abs(got - want) <= 1e-11);
}

TEST_CASE("convergence failure carries the best estimate") {
    QuadratureSpec spec;
    spec.abs_tol = 0.0;
    spec.rel_tol = 1e-16;  // unreachable for a kinked integrand
    spec.max_panels = 8;
    bool threw = false;
    try {
        integrate([](double y) { return std::sqrt(std::abs(y - 0.3717)); }, 0.0, 1.0, spec);
    } catch (const QuadratureError& e) {
        threw = true;
        CHECK(std::isfinite(e.best_estimate));
        CHECK(e.panels_used == 8);
    }
    CHECK(threw);
}

TEST_CASE("deterministic: identical inputs give identical bits") {
    auto f = [](double y) { return std::exp(-y * y) * std::cos(7.0 * y); };
    const double a = integrate(f, 0.0, 5.0);
    const double b = integrate(f, 0.0, 5.0);
    CHECK(a == b);
}
