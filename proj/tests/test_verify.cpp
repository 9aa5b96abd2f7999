#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "skyrsim/io.hpp"
#include "skyrsim/verify.hpp"

using namespace skyrsim;

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
}

TEST_CASE("cancellation identities hold on the sample set") {
    const auto samples = identity_samples(7);
    const VerificationReport rep = check_cancellation_identities(samples);
    for (const auto& c : rep.checks) {
        CAPTURE(c.name);
        CAPTURE(c.value);
        CHECK(c.pass);
    }
}

TEST_CASE("integral identities hold on the sample set") {
    const auto samples = identity_samples(7);
    const VerificationReport rep = check_integral_identities(samples);
    for (const auto& c : rep.checks) {
        CAPTURE(c.name);
        CAPTURE(c.value);
        CHECK(c.pass);
    }
}

TEST_CASE("derivative identities hold") {
    const auto samples = identity_samples(7);
    for (const auto& c : check_time_derivative_identity(samples).checks) {
        CAPTURE(c.value);
        CHECK(c.pass);
    }
    for (const auto& c : check_radial_derivative_identity(7).checks) {
        CAPTURE(c.value);
        CHECK(c.pass);
    }
}

TEST_CASE("cancellation residual is exactly zero at f = N1 pi") {
    std::vector<SamplePoint> pts{{1.0, 0.0, 1}, {1.0, 0.0, 0}};
    const VerificationReport rep = check_cancellation_identities(pts);
    for (const auto& c : rep.checks) CHECK(c.value <= 1e-18);
}

TEST_CASE("weight-positivity scan") {
    const Lemma1Scan s = lemma1_scan(0.5, 20.0 * kPi, 256, 48);
    CHECK(s.r0 > 0.0);
    CHECK(s.global_min >= -1e-12);
    CHECK(s.pure_sine_value == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK(s.smallest_r_period >= 1.0 / 12.0 - 1e-10);
    CHECK(s.r1 > 0.0);
    CHECK(s.minima_near_critical_points);
    CHECK_THROWS_AS(lemma1_scan(0.5, 10.0, 128, 16), std::invalid_argument);
}

TEST_CASE("scan determinism") {
    const Lemma1Scan a = lemma1_scan(0.4, 6.0 * kPi, 256, 16);
    const Lemma1Scan b = lemma1_scan(0.4, 6.0 * kPi, 256, 16);
    CHECK(a.global_min == b.global_min);
    CHECK(a.r0 == b.r0);
    CHECK(a.r1 == b.r1);
}

TEST_CASE("envelope-bound scan at modest resolution") {
    const Corollary1Scan s = corollary1_scan(0.4, 4.0 * kPi, 96);
    CHECK(s.min_margin >= -1e-10);
    CHECK_THROWS_AS(corollary1_scan(0.4, 4.0 * kPi, 32), std::invalid_argument);
    CHECK_THROWS_AS(corollary1_scan(-1.0, 4.0 * kPi, 96), std::invalid_argument);
}

TEST_CASE("zero run gives zero residual") {
    const RadialGrid grid = RadialGrid::make(256, 16.0, 5);
    ModelParams mp;
    SimState a = make_initial_state(grid, mp, {0, 0, 1}, {0, 0, 1});
    SimState b = a, c = a;
    b.t = 0.01;
    c.t = 0.02;
    const PhiResidual res = residual_phi_equation(a, b, c);
    CHECK(res.l2 == 0.0);
    CHECK(res.linf == 0.0);
}

TEST_CASE("residual concentrates in the cutoff transition zone for N1 = 1") {
    const RadialGrid grid = RadialGrid::make(512, 16.0, 5);
    ModelParams mp;
    mp.N1 = 1;
    SimState s = make_initial_state(grid, mp, {0.4, 0.0, 1.0}, {0, 0, 1});
    const double dt = 0.25 * grid.h;
    SimState prev = step(s, -dt), next = step(s, dt);
    const PhiResidual res = residual_phi_equation(prev, s, next);
    CHECK(std::isfinite(res.l2));
    CHECK(res.l2_mid >= res.l2_inner);
}

TEST_CASE("phi-equation residual self-converges at second order") {
    std::vector<double> l2s;
    for (int N : {512, 1024, 2048}) {
        const RadialGrid grid = RadialGrid::make(N, 16.0, 5);
        ModelParams mp;
        SimState s = make_initial_state(grid, mp, {1.0, 0.0, 1.0}, {0, 0, 1});
        const double dt = 0.25 * grid.h;
        const long steps = std::lround(0.5 / dt);
        for (long k = 0; k < steps; ++k) s = step(s, dt);
        SimState prev = step(s, -dt), next = step(s, dt);
        l2s.push_back(residual_phi_equation(prev, s, next).l2);
    }
    CHECK(l2s[0] / l2s[1] >= 3.0);
    CHECK(l2s[1] / l2s[2] >= 3.0);
    CHECK(l2s[0] / l2s[1] <= 5.5);
    CHECK(l2s[1] / l2s[2] <= 5.5);
}

TEST_CASE("residual with a nonzero winding converges too: the static source is exact") {
    // Any error in the composite tail source would leave an O(1) residual.
    std::vector<double> l2s;
    for (int N : {512, 1024, 2048}) {
        const RadialGrid grid = RadialGrid::make(N, 16.0, 5);
        ModelParams mp;
        mp.N1 = 1;
        SimState s = make_initial_state(grid, mp, {0.4, 0.0, 1.0}, {0, 0, 1});
        const double dt = 0.25 * grid.h;
        const long steps = std::lround(0.5 / dt);
        for (long k = 0; k < steps; ++k) s = step(s, dt);
        SimState prev = step(s, -dt), next = step(s, dt);
        l2s.push_back(residual_phi_equation(prev, s, next).l2);
    }
    CHECK(l2s[0] / l2s[1] >= 3.0);
    CHECK(l2s[1] / l2s[2] >= 3.0);
}

TEST_CASE("convergence study reports orders near 2") {
    const ConvergenceStudy cs = convergence_study(0.5, 256, 3, 1.0);
    CHECK(cs.order_solution == doctest::Approx(2.0).epsilon(0.2));
    CHECK(cs.order_phi_residual == doctest::Approx(2.0).epsilon(0.25));
    CHECK(cs.order_dtphi == doctest::Approx(2.0).epsilon(0.35));
}

TEST_CASE("convergence study on zero data is inconclusive, not failing") {
    const ConvergenceStudy cs = convergence_study(0.0, 128, 3, 0.25);
    CHECK(!cs.conclusive);
    CHECK(!cs.note.empty());
}

TEST_CASE("suite runner") {
    CHECK_THROWS_AS(run_suite("nonsense", 1), std::invalid_argument);
    const VerificationReport rep = run_suite("identities", 3);
    CHECK(rep.all_pass());
    CHECK(!rep.table().empty());
    const std::string json = report_to_json(rep);
    CHECK(json.find("\"eq_tag\"") != std::string::npos);
    CHECK(json.find("\"check_name\"") != std::string::npos);
    CHECK(json.find("\"all_pass\": true") != std::string::npos);
}

TEST_CASE("hardy family check passes") {
    const VerificationReport rep = check_hardy_family();
    for (const auto& c : rep.checks) {
        CAPTURE(c.name);
        CAPTURE(c.details);
        CHECK(c.pass);
    }
}
