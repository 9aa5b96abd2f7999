#include "skyrsim/transforms.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace skyrsim {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

double h_comb(double b) {
    // 3 b^{3/2} + b^{-1/2} - b^{-3/2}
    const double s = std::sqrt(b);
    return 3.0 * b * s + 1.0 / s - 1.0 / (b * s);
}

QuadratureSpec with_hint(const QuadratureSpec& spec, double interval_len) {
    QuadratureSpec s = spec;
    const int hint = 1 + static_cast<int>(std::abs(interval_len) / kPi);
    s.initial_panels = std::min(std::max(s.initial_panels, hint), s.max_panels / 2);
    return s;
}

template <class Fn>
void per_node(int n, Fn&& fn) {
    parallel_for(static_cast<std::size_t>(n), [&fn](std::size_t lo, std::size_t hi) {
        for (std::size_t j = lo; j < hi; ++j) fn(static_cast<int>(j));
    });
}

[[noreturn]] void rethrow_with_node(const QuadratureError& e, int node, double r) {
    throw QuadratureError(std::string(e.what()) + " at node " + std::to_string(node) +
                              " (r = " + std::to_string(r) + ")",
                          e.best_estimate, e.panels_used);
}

}  // namespace

Field compute_Phi(const SimState& state, const QuadratureSpec& spec) {
    const RadialGrid& grid = state.grid;
    const CutoffPhi phi(state.model.N1);
    const Field tail = phi_static_tail(grid, state.model.N1, spec);
    Field out(grid.N, Parity::even);
    per_node(grid.N, [&](int j) {
        const double r = grid.r(j);
        const double phi_r = phi(r);
        try {
            out[j] = integrate_0_to(state.g[j],
                                    [r, phi_r](double y) { return std::sqrt(eval_B(r, y, phi_r)); },
                                    spec) +
                     tail[j];
        } catch (const QuadratureError& e) {
            rethrow_with_node(e, j, r);
        }
    });
    return out;
}

Field compute_Phi1(const SimState& state, const QuadratureSpec& spec) {
    const RadialGrid& grid = state.grid;
    const CutoffPhi phi(state.model.N1);
    const double n1pi = state.model.N1 * kPi;
    Field out(grid.N, Parity::odd);
    per_node(grid.N, [&](int j) {
        const double r = grid.r(j);
        const double f = phi(r) + r * state.g[j];
        try {
            const QuadratureSpec s = with_hint(spec, f - n1pi);
            out[j] = f >= n1pi ? integrate([r](double y) { return std::sqrt(eval_B1(r, y)); }, n1pi, f, s)
                               : -integrate([r](double y) { return std::sqrt(eval_B1(r, y)); }, f, n1pi, s);
        } catch (const QuadratureError& e) {
            rethrow_with_node(e, j, r);
        }
    });
    return out;
}

Field compute_Phi2(const SimState& state, const QuadratureSpec& spec) {
    const Field phi1 = compute_Phi1(state, spec);
    Field out(state.grid.N, Parity::even);
    for (int j = 0; j < state.grid.N; ++j) out[j] = phi1[j] / state.grid.r(j);
    return out;
}

Field compute_dtPhi(const SimState& state) {
    const CutoffPhi phi(state.model.N1);
    Field out(state.grid.N, Parity::even);
    for (int j = 0; j < state.grid.N; ++j) {
        const double r = state.grid.r(j);
        out[j] = std::sqrt(eval_B(r, state.g[j], phi(r))) * state.gt[j];
    }
    return out;
}

Field phi_static_tail(const RadialGrid& grid, int N1, const QuadratureSpec& spec) {
    Field out(grid.N, Parity::even);
    if (N1 == 0) return out;
    const CutoffPhi phi(N1);
    const double n1pi = N1 * kPi;
    per_node(grid.N, [&](int j) {
        const double r = grid.r(j);
        const double pg1 = phi_gt1(r);
        if (pg1 == 0.0) return;
        const QuadratureSpec s = with_hint(spec, n1pi);
        const double ia = phi(r) == 0.0
                              ? 0.0
                              : integrate([r](double y) { return std::sqrt(eval_B1(r, y)); }, 0.0, phi(r), s);
        const double ib = integrate(
            [r](double y) {
                const double b = eval_B1(r, y);
                const double sq = std::sqrt(b);
                return b * sq - sq + (1.0 / sq - 1.0 / (b * sq)) / 3.0;
            },
            0.0, n1pi, s);
        out[j] = pg1 * (ia + ib) / r;
    });
    return out;
}

Field phi_minus_phi2_tail(const RadialGrid& grid, int N1, const QuadratureSpec& spec) {
    Field out(grid.N, Parity::even);
    if (N1 == 0) return out;
    const double n1pi = N1 * kPi;
    per_node(grid.N, [&](int j) {
        const double r = grid.r(j);
        const double pg1 = phi_gt1(r);
        if (pg1 == 0.0) return;
        const QuadratureSpec s = with_hint(spec, n1pi);
        out[j] = pg1 / (3.0 * r) *
                 integrate([r](double y) { return h_comb(eval_B1(r, y)); }, 0.0, n1pi, s);
    });
    return out;
}

Field phi_equation_source(const RadialGrid& grid, int N1, const QuadratureSpec& spec) {
    Field out(grid.N, Parity::even);
    if (N1 == 0) return out;
    const CutoffPhi phi(N1);
    const double n1pi = N1 * kPi;
    const Field tail25 = phi_minus_phi2_tail(grid, N1, spec);
    const Field lap_tail = laplacian(tail25, grid);
    per_node(grid.N, [&](int j) {
        const double r = grid.r(j);
        double c = 0.0;
        if (r > 1.0) {
            const QuadratureSpec s = with_hint(spec, n1pi - phi(r));
            c = integrate([r](double y) { return h_comb(eval_B1(r, y)); }, phi(r), n1pi, s) / (2.0 * r);
        }
        out[j] = 1.5 * tail25[j] - lap_tail[j] - c;
    });
    return out;
}

double skyrme_energy(const SimState& state) {
    // Discrete form of E = 1/2 int (1 + 2 sin^2 f/r^2)(f_t^2 + f_r^2) r^2 dr
    // + int sin^2 f (1 + sin^2 f/(2 r^2)) dr with the gradient term summed
    // over faces. This is the invariant of the semi-discrete flow in rhs();
    // the axis face carries half weight, which is what makes dE/dt telescope
    // to the outer-boundary flux alone.
    const RadialGrid& grid = state.grid;
    const int N = grid.N;
    const CutoffPhi phi(state.model.N1);
    std::vector<double> af(static_cast<std::size_t>(N));  // r^2 + 2 sin^2 f
    std::vector<double> fv(static_cast<std::size_t>(N));
    std::vector<double> terms;
    terms.reserve(2 * static_cast<std::size_t>(N));
    for (int j = 0; j < N; ++j) {
        const double r = grid.r(j);
        const double A = eval_B(r, state.g[j], phi(r));  // 1 + 2 sin^2 f / r^2
        af[static_cast<std::size_t>(j)] = r * r * A;
        fv[static_cast<std::size_t>(j)] = phi(r) + r * state.g[j];
        const double ft = r * state.gt[j];
        const double q = 0.5 * (A - 1.0);  // sin^2 f / r^2
        terms.push_back(0.5 * A * ft * ft * r * r + q * (1.0 + 0.5 * q) * r * r);
    }
    // Face gradient energy: face k at r = k h, D_0 = g_0 with half weight.
    terms.push_back(0.25 * af[0] * state.g[0] * state.g[0]);
    for (int k = 1; k < N; ++k) {
        const double d = (fv[static_cast<std::size_t>(k)] - fv[static_cast<std::size_t>(k - 1)]) / grid.h;
        terms.push_back(0.25 * (af[static_cast<std::size_t>(k - 1)] + af[static_cast<std::size_t>(k)]) * d * d);
    }
    return pairwise_sum(terms) * grid.h;
}

Field g3_integral(const SimState& state, const QuadratureSpec& spec) {
    const RadialGrid& grid = state.grid;
    const CutoffPhi phi(state.model.N1);
    Field out(grid.N, Parity::even);
    per_node(grid.N, [&](int j) {
        const double r = grid.r(j);
        const double phi_r = phi(r);
        try {
            out[j] = 0.5 * integrate_0_to(state.g[j],
                                          [r, phi_r](double y) { return h_comb(eval_B(r, y, phi_r)); },
                                          spec);
        } catch (const QuadratureError& e) {
            rethrow_with_node(e, j, r);
        }
    });
    return out;
}

double corollary1_margin(const SimState& state, double r0, const QuadratureSpec& spec) {
    const RadialGrid& grid = state.grid;
    int count = 0;
    while (count < grid.N && grid.r(count) <= r0) ++count;
    if (count == 0) return 0.0;
    std::vector<double> margins(static_cast<std::size_t>(count));
    parallel_for(static_cast<std::size_t>(count), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t j = lo; j < hi; ++j) {
            const double r = grid.r(static_cast<int>(j));
            const double g = state.g[static_cast<int>(j)];
            const double g2 = eval_G2(r, g, spec);
            const double g1 = eval_G1(r, g, spec);
            margins[j] = 9.0 / 8.0 * g2 * g2 / (r * r) - std::abs(g1);
        }
    });
    double m = margins[0];
    for (double x : margins) m = std::min(m, x);
    return m;
}

PhiSnapshot build_phi_snapshot(const SimState& state, const QuadratureSpec& spec) {
    PhiSnapshot snap;
    snap.t = state.t;
    snap.phi = compute_Phi(state, spec);
    snap.phi1 = compute_Phi1(state, spec);
    snap.phi2 = Field(state.grid.N, Parity::even);
    for (int j = 0; j < state.grid.N; ++j) snap.phi2[j] = snap.phi1[j] / state.grid.r(j);
    snap.dt_phi = compute_dtPhi(state);
    return snap;
}

DiagnosticsRecord compute_diagnostics(const SimState& state, double r0, const QuadratureSpec& spec) {
    DiagnosticsRecord rec;
    rec.t = state.t;
    rec.E = skyrme_energy(state);
    rec.G = continuation_G(state);
    const Field phi = compute_Phi(state, spec);
    const Field dtphi = compute_dtPhi(state);
    rec.l2_phi = norm_L2(phi, state.grid);
    rec.l2_dtphi = norm_L2(dtphi, state.grid);
    rec.h1_phi = norm_H1(phi, state.grid);
    rec.coercivity = coercivity_functional(phi, state.grid);
    rec.g1_margin = corollary1_margin(state, r0, spec);
    const Field g3 = g3_integral(state, spec);
    double sup_r2g = 0.0, g3_ratio = 0.0;
    for (int j = 0; j < state.grid.N; ++j) {
        const double r = state.grid.r(j);
        sup_r2g = std::max(sup_r2g, r * r * std::abs(state.g[j]));
        if (r < 0.5) {
            const double p = std::abs(phi[j]);
            g3_ratio = std::max(g3_ratio, std::abs(g3[j]) / (p * p + p + 1e-12));
        }
    }
    rec.sup_r2g = sup_r2g;
    rec.g3_ratio = g3_ratio;
    return rec;
}

}  // namespace skyrsim
