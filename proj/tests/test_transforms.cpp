#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "skyrsim/transforms.hpp"

using namespace skyrsim;

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

SimState state_with(int N, double R, int N1, double (*gf)(double), double (*gtf)(double)) {
    const RadialGrid grid = RadialGrid::make(N, R, 5);
    ModelParams mp;
    mp.N1 = N1;
    SimState s;
    s.grid = grid;
    s.model = mp;
    s.g = Field(N, Parity::even);
    s.gt = Field(N, Parity::even);
    for (int j = 0; j < N; ++j) {
        s.g[j] = gf(grid.r(j));
        s.gt[j] = gtf(grid.r(j));
    }
    return s;
}

double zero_f(double) { return 0.0; }
double gauss_f(double r) { return 1.3 * std::exp(-r * r); }
double gauss2_f(double r) { return 0.6 * std::exp(-0.5 * (r - 1.0) * (r - 1.0)); }

}  // namespace

TEST_CASE("Phi vanishes for trivial data") {
    SimState s = state_with(256, 16.0, 0, zero_f, zero_f);
    const Field phi = compute_Phi(s);
    for (int j = 0; j < 256; ++j) CHECK(phi[j] == 0.0);

    SimState s1 = state_with(256, 16.0, 1, zero_f, zero_f);
    const Field phi1 = compute_Phi(s1);
    for (int j = 0; j < 256; ++j)
        if (s1.grid.r(j) <= 0.5) CHECK(phi1[j] == 0.0);
}

TEST_CASE("Phi small-r limit is the flat-kernel integral") {
    // as r -> 0 with g fixed, the kernel tends to sqrt(1 + 2 y^2)
    SimState s = state_with(8192, 16.0, 0, [](double) { return 1.0; }, zero_f);
    const Field phi = compute_Phi(s);
    const double want = 0.5 * std::sqrt(3.0) + std::asinh(std::sqrt(2.0)) / (2.0 * std::sqrt(2.0));
    CHECK(phi[0] == doctest::Approx(want).epsilon(1e-5));
}

TEST_CASE("Phi1 basics and the definitional node identity") {
    SimState s = state_with(512, 16.0, 1, zero_f, zero_f);
    const Field phi1 = compute_Phi1(s);
    for (int j = 0; j < 512; ++j)
        if (s.grid.r(j) < 1.0) CHECK(std::abs(phi1[j]) <= 1e-14);  // f = N1 pi there

    SimState s2 = state_with(512, 16.0, 0, gauss2_f, zero_f);
    const PhiSnapshot snap = build_phi_snapshot(s2);
    for (int j = 0; j < 512; ++j)
        CHECK(snap.phi1[j] == doctest::Approx(s2.grid.r(j) * snap.phi2[j]).epsilon(1e-14));
}

TEST_CASE("Phi1 tends to f at large r for N1 = 0") {
    SimState s = state_with(512, 64.0, 0, [](double r) { return 2.0 / (1.0 + r * r); }, zero_f);
    const Field phi1 = compute_Phi1(s);
    const int j = 400;  // far out
    const double r = s.grid.r(j);
    const double f = r * s.g[j];
    CHECK(phi1[j] == doctest::Approx(f).epsilon(1e-3));
}

TEST_CASE("the two tail routes agree: Phi = Phi2 + tail") {
    for (int N1 : {0, 1, 2}) {
        SimState s = state_with(512, 16.0, N1, gauss2_f, zero_f);
        const Field phi = compute_Phi(s);
        const Field phi2 = compute_Phi2(s);
        const Field tail = phi_minus_phi2_tail(s.grid, N1, {});
        for (int j = 0; j < 512; ++j) {
            const double r = s.grid.r(j);
            CHECK(phi[j] - phi2[j] == doctest::Approx(tail[j]).epsilon(1e-9).scale(1.0));
            if (r < 0.5 && N1 > 0) CHECK(std::abs(tail[j]) == 0.0);
        }
    }
}

TEST_CASE("time derivative of Phi") {
    SimState s = state_with(256, 16.0, 1, gauss2_f, zero_f);
    const Field d0 = compute_dtPhi(s);
    for (int j = 0; j < 256; ++j) CHECK(d0[j] == 0.0);

    SimState s2 = state_with(1024, 16.0, 0, gauss_f, gauss2_f);
    const Field dt_phi = compute_dtPhi(s2);
    // small-r limit: sqrt(1 + 2 g^2) gt
    const double g0 = s2.g[0], gt0 = s2.gt[0];
    CHECK(dt_phi[0] == doctest::Approx(std::sqrt(1.0 + 2.0 * g0 * g0) * gt0).epsilon(1e-4));

    // agreement with the centered time difference of Phi across snapshots
    double prev_err = 0.0;
    for (double dt : {2e-3, 1e-3}) {
        SimState sp = s2, sm = s2;
        sp = step(sp, dt);
        sm = step(sm, -dt);
        const Field pp = compute_Phi(sp), pm = compute_Phi(sm);
        double err = 0.0;
        for (int j = 0; j < s2.grid.N; ++j)
            err = std::max(err, std::abs((pp[j] - pm[j]) / (2.0 * dt) - dt_phi[j]));
        if (prev_err > 0.0) CHECK(prev_err / err >= 3.0);  // O(dt^2)
        prev_err = err;
    }
}

TEST_CASE("Skyrme energy basics") {
    SimState z = state_with(256, 16.0, 0, zero_f, zero_f);
    CHECK(skyrme_energy(z) == 0.0);

    // static profile: refinement oracle
    double prev = 0.0, prev_err = 0.0;
    double best = 0.0;
    {
        SimState fine = state_with(16384, 16.0, 0, gauss_f, zero_f);
        best = skyrme_energy(fine);
    }
    for (int N : {1024, 2048, 4096}) {
        SimState s = state_with(N, 16.0, 0, gauss_f, zero_f);
        const double E = skyrme_energy(s);
        const double err = std::abs(E - best);
        if (prev > 0.0) CHECK(prev_err / err >= 3.0);
        prev = E;
        prev_err = err;
        CHECK(E >= 0.0);
    }
}

TEST_CASE("per-node integral of the cubic kernel combination") {
    SimState z = state_with(256, 16.0, 0, zero_f, zero_f);
    const Field g3z = g3_integral(z);
    for (int j = 0; j < 256; ++j) CHECK(g3z[j] == 0.0);

    // small-r oracle: integrand tends to 3(1+2y^2)^{3/2} + (1+2y^2)^{-1/2} - (1+2y^2)^{-3/2}
    SimState s = state_with(8192, 16.0, 0, [](double) { return 0.8; }, zero_f);
    const Field g3 = g3_integral(s);
    const double want = 0.5 * integrate_0_to(0.8, [](double y) {
        const double b = 1.0 + 2.0 * y * y;
        return 3.0 * b * std::sqrt(b) + 1.0 / std::sqrt(b) - 1.0 / (b * std::sqrt(b));
    });
    CHECK(g3[0] == doctest::Approx(want).epsilon(1e-4));
}

TEST_CASE("envelope margin at the grid") {
    SimState z = state_with(256, 16.0, 0, zero_f, zero_f);
    CHECK(corollary1_margin(z, 0.25) == 0.0);

    SimState s = state_with(512, 16.0, 0, gauss_f, zero_f);
    CHECK(corollary1_margin(s, 0.25) >= -1e-10);
    // the constant is 9/4 * 1/2
    CHECK(9.0 / 8.0 == doctest::Approx(2.25 * 0.5));
}

TEST_CASE("radial-derivative split at small radii") {
    // d_r Phi + (2/r) Phi = A1^{1/2} f_r / r + (1/r) int_0^g B2^{-1/2} dy on r <= 1/2,
    // checked against centered differences of the node quadratures.
    double prev_err = 0.0;
    for (int N : {2048, 4096}) {
        SimState s = state_with(N, 16.0, 0, gauss_f, zero_f);
        const Field phi = compute_Phi(s);
        const Field gr = gradient(s.g, s.grid);
        double err = 0.0;
        for (int j = 1; j + 1 < N; ++j) {
            const double r = s.grid.r(j);
            if (r > 0.45) break;
            const double dphi = (phi[j + 1] - phi[j - 1]) / (2.0 * s.grid.h);
            const double lhs = dphi + 2.0 / r * phi[j];
            const double fr = s.g[j] + r * gr[j];
            const double rhs = std::sqrt(eval_B2(r, s.g[j])) * fr / r +
                               integrate_0_to(s.g[j],
                                              [r](double y) { return 1.0 / std::sqrt(eval_B2(r, y)); }) /
                                   r;
            err = std::max(err, std::abs(lhs - rhs));
        }
        if (prev_err > 0.0) CHECK(prev_err / err >= 3.0);  // O(h^2)
        prev_err = err;
    }
}

TEST_CASE("quadrature failure carries the node location") {
    SimState s = state_with(64, 16.0, 0, [](double) { return 1.0; }, zero_f);
    QuadratureSpec starved;
    starved.abs_tol = 0.0;
    starved.rel_tol = 1e-17;  // unreachable
    starved.max_panels = 2;
    bool threw = false;
    try {
        compute_Phi(s, starved);
    } catch (const QuadratureError& e) {
        threw = true;
        CHECK(std::string(e.what()).find("node") != std::string::npos);
        CHECK(std::isfinite(e.best_estimate));
    }
    CHECK(threw);
}

TEST_CASE("diagnostics record sanity on a healthy state") {
    SimState s = state_with(512, 16.0, 0, gauss_f, gauss2_f);
    const DiagnosticsRecord d = compute_diagnostics(s, 0.25);
    CHECK(std::isfinite(d.E));
    CHECK(d.E > 0.0);
    CHECK(d.G > 0.0);
    CHECK(d.l2_phi > 0.0);
    CHECK(d.h1_phi >= d.l2_phi);
    CHECK(d.g1_margin >= -1e-10);
    const double grad2 = d.h1_phi * d.h1_phi - d.l2_phi * d.l2_phi;
    CHECK(d.coercivity >= -1e-8 * grad2);
}
