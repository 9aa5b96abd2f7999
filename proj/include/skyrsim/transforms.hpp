#pragma once

#include "skyrsim/dynamics.hpp"
#include "skyrsim/grid.hpp"
#include "skyrsim/kernels.hpp"
#include "skyrsim/quadrature.hpp"

namespace skyrsim {

// Nonlocal transformation chain of the field:
//   Phi1(r) = int_{N1 pi}^{f} B1^{1/2} dy          (d = 3, odd)
//   Phi2    = Phi1 / r                             (d = 5, even)
//   Phi     = int_0^{g} B^{1/2} dy + tail(r)       (d = 5, even)
// where tail is the exact static correction supported in r > 1/2 that makes
// Phi = Phi2 + (1/(3r)) phi_{>1} int_0^{N1 pi} (3 B1^{3/2} + B1^{-1/2} - B1^{-3/2}) dy.

struct PhiSnapshot {
    double t = 0.0;
    Field phi;     // d = 5, even
    Field phi1;    // d = 3, odd
    Field phi2;    // d = 5, even
    Field dt_phi;  // d = 5, even
};

struct DiagnosticsRecord {
    double t = 0.0;
    double E = 0.0;            // Skyrme energy
    double G = 0.0;            // continuation quantity
    double l2_phi = 0.0;
    double l2_dtphi = 0.0;
    double h1_phi = 0.0;
    double coercivity = 0.0;   // int |grad Phi|^2 - (9/4) Phi^2/r^2
    double g1_margin = 0.0;    // min over r <= r0 of (9/8) G2^2/r^2 - |G1|
    double sup_r2g = 0.0;      // max_j r_j^2 |g_j|, far-field decay monitor
    double g3_ratio = 0.0;     // max over r < 1/2 of |G3| / (|Phi|^2 + |Phi| + 1e-12)
};

Field compute_Phi(const SimState& state, const QuadratureSpec& spec = {});
Field compute_Phi1(const SimState& state, const QuadratureSpec& spec = {});
Field compute_Phi2(const SimState& state, const QuadratureSpec& spec = {});
Field compute_dtPhi(const SimState& state);

// Exact static tail in Phi = int_0^g B^{1/2} dy + tail(r); zero for N1 = 0
// and for r <= 1/2.
Field phi_static_tail(const RadialGrid& grid, int N1, const QuadratureSpec& spec = {});

// The alternative route Phi - Phi2; supported on r > 1/2, nonzero only for N1 > 0.
Field phi_minus_phi2_tail(const RadialGrid& grid, int N1, const QuadratureSpec& spec = {});

// Static source S(r) in the exact wave equation
//   box_5 Phi = S(r) - (3/2) Phi + G3(r, t),
// assembled from the tail terms; zero when N1 = 0. Uses the same discrete
// Laplacian as the residual harness so the identity closes at stencil order.
Field phi_equation_source(const RadialGrid& grid, int N1, const QuadratureSpec& spec = {});

// E(t) = 1/2 int (1 + 2 sin^2 f/r^2)(f_t^2 + f_r^2) r^2 dr
//        + int sin^2 f/r^2 (1 + sin^2 f/(2 r^2)) r^2 dr, composite rule on the grid.
double skyrme_energy(const SimState& state);

// G3(r) = 1/2 int_0^g (3 B^{3/2} + B^{-1/2} - B^{-3/2}) dy per node.
Field g3_integral(const SimState& state, const QuadratureSpec& spec = {});

// min over nodes with r <= r0 of (9/8) G2(r, g)^2 / r^2 - |G1(r, g)|.
double corollary1_margin(const SimState& state, double r0, const QuadratureSpec& spec = {});

PhiSnapshot build_phi_snapshot(const SimState& state, const QuadratureSpec& spec = {});
DiagnosticsRecord compute_diagnostics(const SimState& state, double r0, const QuadratureSpec& spec = {});

}  // namespace skyrsim
