#include "skyrsim/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace skyrsim {

namespace {

// Far-field nonlinearity N(r, f, f_t, f_r) of the unreduced equation:
//   N = -(1/A1) [ 4 sin^2 f / r^3 f_r + sin(2f)/r^2 (f_t^2 - f_r^2)
//                 + sin(2f)/r^2 + sin^2 f sin(2f)/r^4 ].
// With the coupling disabled only the -sin(2f)/r^2 term survives (A1 = 1).
double far_nonlinearity(double r, double f, double ft, double fr, bool disable_skyrme) {
    const double s = std::sin(f);
    const double s2 = std::sin(2.0 * f);
    const double r2 = r * r;
    if (disable_skyrme) return -s2 / r2;
    const double a1 = 1.0 + 2.0 * s * s / r2;
    const double num = 4.0 * s * s / (r2 * r) * fr + s2 / r2 * (ft * ft - fr * fr) + s2 / r2 +
                       s * s * s2 / (r2 * r2);
    return -num / a1;
}

}  // namespace

namespace {

// Quasilinear coefficient a = r^2 + 2 sin^2 f and the trig factors, routed
// through F~0 for r <= 1 where phi = N1 pi makes the argument reduce mod pi.
struct LocalTrig {
    double a;        // r^2 + 2 sin^2 f  (r^2 alone in wave-map mode)
    double s2;       // sin(2 f)
    double s2_over_r2;  // sin^2(f)/r^2, removable at the origin
};

LocalTrig local_trig(double r, double g, const CutoffPhi& phi, bool wave_map) {
    LocalTrig t;
    if (r <= 1.0) {
        const double s2f_r2 = 0.5 * eval_Ftilde(0, r * g) * g * g;  // sin^2(f)/r^2
        t.s2 = std::sin(2.0 * r * g);
        t.s2_over_r2 = s2f_r2;
        t.a = wave_map ? r * r : r * r * (1.0 + 2.0 * s2f_r2);
    } else {
        const double f = phi(r) + r * g;
        const double s = std::sin(f);
        t.s2 = std::sin(2.0 * f);
        t.s2_over_r2 = s * s / (r * r);
        t.a = wave_map ? r * r : r * r + 2.0 * s * s;
    }
    return t;
}

}  // namespace

RhsResult rhs(const SimState& state) {
    const RadialGrid& grid = state.grid;
    const int N = grid.N;
    const double h = grid.h;
    const CutoffPhi phi(state.model.N1);
    const bool wm = state.model.disable_skyrme_term;

    RhsResult out;
    out.dg = state.gt;
    out.dgt = Field(N, Parity::even);

    std::vector<double> f(static_cast<std::size_t>(N)), a(static_cast<std::size_t>(N));
    std::vector<double> s2(static_cast<std::size_t>(N)), s2r2(static_cast<std::size_t>(N));
    for (int j = 0; j < N; ++j) {
        const double r = grid.r(j);
        f[static_cast<std::size_t>(j)] = phi(r) + r * state.g[j];
        const LocalTrig t = local_trig(r, state.g[j], phi, wm);
        a[static_cast<std::size_t>(j)] = t.a;
        s2[static_cast<std::size_t>(j)] = t.s2;
        s2r2[static_cast<std::size_t>(j)] = t.s2_over_r2;
    }

    // Face k sits at r = k h. The r = 0 face uses the odd extension of
    // f - N1 pi, giving D = g_0 exactly; the outer face is closed
    // one-sidedly.
    auto face = [&](int k, double& abar, double& d) {
        if (k == 0) {
            abar = a[0];
            d = state.g[0];
        } else if (k == N) {
            abar = a[static_cast<std::size_t>(N - 1)];
            d = (2.0 * f[static_cast<std::size_t>(N - 1)] - 3.0 * f[static_cast<std::size_t>(N - 2)] +
                 f[static_cast<std::size_t>(N - 3)]) /
                h;
        } else {
            abar = 0.5 * (a[static_cast<std::size_t>(k - 1)] + a[static_cast<std::size_t>(k)]);
            d = (f[static_cast<std::size_t>(k)] - f[static_cast<std::size_t>(k - 1)]) / h;
        }
    };

    double abar_lo, d_lo;
    face(0, abar_lo, d_lo);
    for (int j = 0; j < N; ++j) {
        const double r = grid.r(j);
        double abar_hi, d_hi;
        face(j + 1, abar_hi, d_hi);
        const double ft = r * state.gt[j];
        const double flux = (abar_hi * d_hi - abar_lo * d_lo) / h;
        double ftt = flux - s2[static_cast<std::size_t>(j)] * (1.0 + s2r2[static_cast<std::size_t>(j)]);
        if (!wm)
            ftt -= s2[static_cast<std::size_t>(j)] *
                   (ft * ft + 0.5 * (d_hi * d_hi + d_lo * d_lo));
        else
            ftt += s2[static_cast<std::size_t>(j)] * s2r2[static_cast<std::size_t>(j)];  // drop the quartic potential
        ftt /= a[static_cast<std::size_t>(j)];
        const double val = ftt / r;
        if (!std::isfinite(val)) throw NonFiniteFieldError(j, r, state.t);
        out.dgt[j] = val;
        abar_lo = abar_hi;
        d_lo = d_hi;
    }

    const double sigma = state.model.dissipation;
    if (sigma > 0.0) {
        // Kreiss-Oliger fourth difference at O(h^3), parity ghosts across the
        // axis, off at the two outermost cells.
        const double c = sigma / (16.0 * grid.h);
        auto at = [&](const Field& u, int j) {
            if (j >= 0) return u[j];
            return *u.parity == Parity::even ? u[-1 - j] : -u[-1 - j];
        };
        for (int j = 0; j < N - 2; ++j) {
            const double d4g = at(state.g, j - 2) - 4.0 * at(state.g, j - 1) + 6.0 * state.g[j] -
                               4.0 * state.g[j + 1] + state.g[j + 2];
            const double d4t = at(state.gt, j - 2) - 4.0 * at(state.gt, j - 1) + 6.0 * state.gt[j] -
                               4.0 * state.gt[j + 1] + state.gt[j + 2];
            out.dg[j] -= c * d4g;
            out.dgt[j] -= c * d4t;
        }
    }
    return out;
}

RhsResult rhs_pointwise(const SimState& state) {
    const RadialGrid& grid = state.grid;
    const int N = grid.N;
    const CutoffPhi phi(state.model.N1);
    const KernelTable& kt = KernelTable::standard();

    const Field lap = laplacian(state.g, grid);
    const Field gr = gradient(state.g, grid);

    RhsResult out;
    out.dg = state.gt;
    out.dgt = Field(N, Parity::even);

    for (int j = 0; j < N; ++j) {
        const double r = grid.r(j);
        const double g = state.g[j];
        const double gt = state.gt[j];
        const double gpr = gr[j];
        double src = 0.0;

        const double pl1 = phi_lt1(r);
        if (pl1 > 0.0) {
            // Near form: rational combination of F~0..F~4 at x = r g.
            const double x = r * g;
            const double g2 = g * g;
            double w;
            if (state.model.disable_skyrme_term) {
                w = kt.ftilde(1, x) * g2 * g;
            } else {
                const double num = kt.ftilde(1, x) * g2 * g + kt.ftilde(2, x) * g2 * g2 * g -
                                   kt.ftilde(3, x) * g * (gt * gt - gpr * gpr) +
                                   kt.ftilde(4, x) * g2 * g2 * (r * gpr);
                w = num / (1.0 + kt.ftilde(0, x) * g2);
            }
            src += pl1 * w;
        }

        const double pg1 = 1.0 - pl1;
        if (pg1 > 0.0) {
            // Far form through f = phi + r g.
            const double f = phi(r) + r * g;
            const double fr = phi.d1(r) + g + r * gpr;
            const double ft = r * gt;
            src += pg1 * (2.0 * g / (r * r) +
                          far_nonlinearity(r, f, ft, fr, state.model.disable_skyrme_term) / r);
        }

        if (state.model.N1 != 0 && r > 1.0 && r < 2.0) src += phi.laplacian3(r) / r;

        const double val = lap[j] + src;
        if (!std::isfinite(val)) throw NonFiniteFieldError(j, r, state.t);
        out.dgt[j] = val;
    }

    const double sigma = state.model.dissipation;
    if (sigma > 0.0) {
        // Kreiss-Oliger: u_t -= sigma/(16 h) * (fourth difference of u),
        // parity ghosts across the axis, off at the two outermost cells.
        const double c = sigma / (16.0 * grid.h);
        auto at = [&](const Field& u, int j) {
            if (j >= 0) return u[j];
            return *u.parity == Parity::even ? u[-1 - j] : -u[-1 - j];
        };
        for (int j = 0; j < N - 2; ++j) {
            const double d4g = at(state.g, j - 2) - 4.0 * at(state.g, j - 1) + 6.0 * state.g[j] -
                               4.0 * state.g[j + 1] + state.g[j + 2];
            const double d4t = at(state.gt, j - 2) - 4.0 * at(state.gt, j - 1) + 6.0 * state.gt[j] -
                               4.0 * state.gt[j + 1] + state.gt[j + 2];
            out.dg[j] -= c * d4g;
            out.dgt[j] -= c * d4t;
        }
    }
    return out;
}

namespace {

void axpy(Field& y, double a, const Field& x) {
    for (int j = 0; j < y.size(); ++j) y[j] += a * x[j];
}

}  // namespace

SimState step(const SimState& state, double dt) {
    const RhsResult k1 = rhs(state);

    SimState s2 = state;
    s2.t = state.t + 0.5 * dt;
    axpy(s2.g, 0.5 * dt, k1.dg);
    axpy(s2.gt, 0.5 * dt, k1.dgt);
    const RhsResult k2 = rhs(s2);

    SimState s3 = state;
    s3.t = state.t + 0.5 * dt;
    axpy(s3.g, 0.5 * dt, k2.dg);
    axpy(s3.gt, 0.5 * dt, k2.dgt);
    const RhsResult k3 = rhs(s3);

    SimState s4 = state;
    s4.t = state.t + dt;
    axpy(s4.g, dt, k3.dg);
    axpy(s4.gt, dt, k3.dgt);
    const RhsResult k4 = rhs(s4);

    SimState next = state;
    next.t = state.t + dt;
    const double c = dt / 6.0;
    for (int j = 0; j < state.g.size(); ++j) {
        next.g[j] += c * (k1.dg[j] + 2.0 * k2.dg[j] + 2.0 * k3.dg[j] + k4.dg[j]);
        next.gt[j] += c * (k1.dgt[j] + 2.0 * k2.dgt[j] + 2.0 * k3.dgt[j] + k4.dgt[j]);
    }
    return next;
}

double continuation_G(const SimState& state) {
    const Field gr = gradient(state.g, state.grid);
    double sup_g = 0.0, sup_d = 0.0;
    for (int j = 0; j < state.g.size(); ++j) {
        const double w = std::sqrt(1.0 + state.grid.r(j) * state.grid.r(j));
        sup_g = std::max(sup_g, w * std::abs(state.g[j]));
        sup_d = std::max(sup_d, w * (std::abs(state.gt[j]) + std::abs(gr[j])));
    }
    return sup_g + sup_d;
}

double boundary_energy_fraction(const SimState& state) {
    const int N = state.grid.N;
    const int window = std::max(8, N / 256);
    const Field gr = gradient(state.g, state.grid);
    std::vector<double> dens(static_cast<std::size_t>(N));
    for (int j = 0; j < N; ++j) {
        const double r = state.grid.r(j);
        const double w = r * r * r * r;
        dens[static_cast<std::size_t>(j)] =
            (state.gt[j] * state.gt[j] + gr[j] * gr[j] + state.g[j] * state.g[j]) * w;
    }
    const double total = pairwise_sum(dens);
    if (total <= 0.0) return 0.0;
    const double tail = pairwise_sum(std::span<const double>(dens).subspan(static_cast<std::size_t>(N - window)));
    return tail / total;
}

RunOutcome run(SimState state, const EvolutionConfig& config, const std::vector<RecordSink>& sinks) {
    if (!(config.cfl > 0.0 && config.cfl <= 0.5)) throw std::invalid_argument("cfl must be in (0, 0.5]");
    const double dt = config.cfl * state.grid.h;
    const long total_steps = std::lround(std::ceil(config.t_end / dt - 1e-9));

    auto record = [&](int step_idx) {
        for (const auto& sink : sinks) sink(state, step_idx);
    };
    auto check = [&](RunOutcome& out) {
        if (!state.g.finite() || !state.gt.finite()) {
            out = {RunStatus::blowup_flagged, state.t, std::numeric_limits<double>::infinity(), 0};
            return false;
        }
        const double G = continuation_G(state);
        if (G > config.blowup_threshold) {
            out = {RunStatus::blowup_flagged, state.t, G, 0};
            return false;
        }
        if (boundary_energy_fraction(state) > 1e-10) {
            out = {RunStatus::boundary_contaminated, state.t, G, 0};
            return false;
        }
        return true;
    };

    RunOutcome out;
    if (!check(out)) return out;
    record(0);
    for (long s = 1; s <= total_steps; ++s) {
        const double this_dt = std::min(dt, config.t_end - state.t);
        if (this_dt <= 0.0) break;
        try {
            state = step(state, this_dt);
        } catch (const NonFiniteFieldError&) {
            return {RunStatus::blowup_flagged, state.t, std::numeric_limits<double>::infinity(),
                    static_cast<int>(s)};
        }
        const bool at_record = (s % config.record_every == 0) || s == total_steps;
        if (at_record) {
            if (!check(out)) {
                out.steps = static_cast<int>(s);
                return out;
            }
            record(static_cast<int>(s));
        }
    }
    return {RunStatus::completed, state.t, continuation_G(state), static_cast<int>(total_steps)};
}

double GaussianPulse::operator()(double r) const {
    if (a == 0.0) return 0.0;
    auto lobe = [this](double x) {
        const double d = std::abs(x - r_c);
        if (d >= 5.0 * sigma) return 0.0;
        double cut = 1.0;
        if (d > 3.5 * sigma) cut = 1.0 - SmoothStep::value((d - 3.5 * sigma) / (1.5 * sigma));
        const double u = (x - r_c) / sigma;
        return std::exp(-u * u) * cut;
    };
    if (r_c == 0.0) return a * lobe(r);  // already even
    // Even symmetrization keeps the radial extension smooth through r = 0.
    return a * (lobe(r) + lobe(-r));
}

SimState make_initial_state(const RadialGrid& grid, const ModelParams& model,
                            const GaussianPulse& g0, const GaussianPulse& g1) {
    SimState s;
    s.t = 0.0;
    s.grid = grid;
    s.model = model;
    s.g = Field(grid.N, Parity::even);
    s.gt = Field(grid.N, Parity::even);
    for (int j = 0; j < grid.N; ++j) {
        s.g[j] = g0(grid.r(j));
        s.gt[j] = g1(grid.r(j));
    }
    return s;
}

}  // namespace skyrsim
