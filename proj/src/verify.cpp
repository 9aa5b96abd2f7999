#include "skyrsim/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

namespace skyrsim {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

CheckResult make_check(std::string name, std::string eq_tag, double value, double tol,
                       std::string details = {}) {
    CheckResult c;
    c.name = std::move(name);
    c.eq_tag = std::move(eq_tag);
    c.value = value;
    c.tol = tol;
    c.pass = std::isfinite(value) && value <= tol;
    c.details = std::move(details);
    return c;
}

// Least-squares slope of log2(err) against level index; errors halve the
// step per level, so the slope is the observed order.
double fit_order(const std::vector<double>& errs, bool& conclusive) {
    int n = static_cast<int>(errs.size());
    for (double e : errs)
        if (!(e > 1e-14)) {
            conclusive = false;
            return 0.0;
        }
    for (int i = 1; i < n; ++i)
        if (errs[static_cast<std::size_t>(i)] >= errs[static_cast<std::size_t>(i - 1)]) conclusive = false;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        const double x = i;
        const double y = -std::log2(errs[static_cast<std::size_t>(i)]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

bool VerificationReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

void VerificationReport::append(VerificationReport other) {
    for (auto& c : other.checks) checks.push_back(std::move(c));
}

std::string VerificationReport::table() const {
    std::ostringstream os;
    os << "check                                   tag                      value        tol          result\n";
    for (const auto& c : checks) {
        os << c.name;
        for (std::size_t i = c.name.size(); i < 40; ++i) os << ' ';
        os << c.eq_tag;
        for (std::size_t i = c.eq_tag.size(); i < 25; ++i) os << ' ';
        char buf[64];
        std::snprintf(buf, sizeof buf, "%-12.4e %-12.4e %s", c.value, c.tol, c.pass ? "pass" : "FAIL");
        os << buf;
        if (!c.details.empty()) os << "  [" << c.details << "]";
        os << '\n';
    }
    return os.str();
}

std::vector<SamplePoint> identity_samples(std::uint64_t seed) {
    std::vector<SamplePoint> out;
    const int n_r = 12, n_f = 9;
    for (int i = 0; i < n_r; ++i) {
        const double r = 1e-3 * std::pow(1e4, static_cast<double>(i) / (n_r - 1));
        for (int j = 0; j < n_f; ++j) {
            const double off = -3.0 * kPi + 6.0 * kPi * j / (n_f - 1);
            for (int N1 : {0, 1}) out.push_back({r, off, N1});
        }
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ur(std::log(1e-3), std::log(10.0));
    std::uniform_real_distribution<double> uf(-3.0 * kPi, 3.0 * kPi);
    for (int k = 0; k < 32; ++k) out.push_back({std::exp(ur(rng)), uf(rng), k % 2});
    return out;
}

VerificationReport check_cancellation_identities(const std::vector<SamplePoint>& samples) {
    double worst1 = 0.0, worst2 = 0.0;
    for (const auto& sp : samples) {
        const double f = sp.N1 * kPi + sp.f_offset;
        const double r = sp.r;
        const double a1 = eval_A1(r, f);
        const double s = std::sin(f), s2 = std::sin(2.0 * f);
        const double dz = std::sqrt(a1);
        const double dzz = s2 / (r * r * std::sqrt(a1));
        const double drho_dz = -2.0 * s * s / (r * r * r * std::sqrt(a1));
        const double t1a = dzz, t1b = dz * s2 / (r * r * a1);
        const double res1 = std::abs(t1a - t1b) / (std::abs(t1a) + std::abs(t1b) + 1.0);
        const double t2a = -2.0 * drho_dz, t2b = dz * 4.0 * s * s / (r * r * r * a1);
        const double res2 = std::abs(t2a - t2b) / (std::abs(t2a) + std::abs(t2b) + 1.0);
        worst1 = std::max(worst1, res1);
        worst2 = std::max(worst2, res2);
    }
    VerificationReport rep;
    rep.checks.push_back(make_check("first transformation cancellation (z)", "cancel-z", worst1, 1e-10));
    rep.checks.push_back(make_check("first transformation cancellation (rho,z)", "cancel-rho-z", worst2, 1e-10));
    return rep;
}

VerificationReport check_integral_identities(const std::vector<SamplePoint>& samples,
                                             const QuadratureSpec& spec) {
    QuadratureSpec qs = spec;
    qs.abs_tol = std::min(qs.abs_tol, 1e-13);
    qs.rel_tol = std::min(qs.rel_tol, 1e-12);
    std::vector<double> w16(samples.size()), w17(samples.size()), w18(samples.size());
    parallel_for(samples.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const auto& sp = samples[i];
            const double r = sp.r;
            const double n1pi = sp.N1 * kPi;
            const double f = n1pi + sp.f_offset;
            const double a1 = eval_A1(r, f);
            const double s = std::sin(f), s2 = std::sin(2.0 * f);
            QuadratureSpec loc = qs;
            loc.initial_panels = 1 + static_cast<int>(std::abs(sp.f_offset) / kPi) * 2;

            // Radial Laplacian of B1^{1/2}, assembled from its first and
            // second rho-derivatives, against the closed combination.
            {
                double worst = 0.0;
                const int ny = 64;
                for (int k = 0; k <= ny; ++k) {
                    const double y = n1pi + (f - n1pi) * k / ny;
                    const double b = eval_B1(r, y);
                    const double sy = std::sin(y);
                    const double S = 2.0 * sy * sy;
                    const double h1 = -S / (r * r * r * std::sqrt(b));  // d/dr B1^{1/2}
                    const double h2 = -std::pow(b, -1.5) * S * S / std::pow(r, 6) +
                                      3.0 * S / (std::sqrt(b) * r * r * r * r);  // d2/dr2
                    const double lhs = h2 + 2.0 * h1 / r;
                    const double rhs = (1.0 / std::sqrt(b) - std::pow(b, -1.5)) / (r * r);
                    const double res = std::abs(lhs - rhs) / (std::abs(h2) + std::abs(2.0 * h1 / r) + std::abs(rhs) + 1.0);
                    worst = std::max(worst, res);
                }
                w16[i] = worst;
            }
            // sin(2f)/r^2 identity.
            {
                const double lhs = s2 / (r * r * std::sqrt(a1));
                double mag = 0.0;
                const double rhs = integrate(
                                       [r, &mag](double y) {
                                           const double b = eval_B1(r, y);
                                           const double v = std::pow(b, -1.5) * (2.0 - r * r * (b * b - 1.0));
                                           mag = std::max(mag, std::abs(v));
                                           return v;
                                       },
                                       n1pi, f, loc) /
                                   (r * r);
                const double scale = std::abs(lhs) + std::abs(rhs) + mag * std::abs(f - n1pi) / (r * r) * 1e-3 + 1.0;
                w17[i] = std::abs(lhs - rhs) / scale;
            }
            // sin^2(f) sin(2f)/r^4 identity.
            {
                const double lhs = s * s * s2 / (r * r * r * r * std::sqrt(a1));
                const double rhs1 = integrate(
                                        [r](double y) {
                                            const double b = eval_B1(r, y);
                                            const double sq = std::sqrt(b);
                                            return 2.0 * sq - std::pow(b, -1.5) - 1.0 / sq;
                                        },
                                        n1pi, f, loc) /
                                    (r * r);
                const double rhs2 = 0.5 * integrate(
                                              [r](double y) {
                                                  const double b = eval_B1(r, y);
                                                  return std::pow(b, -1.5) *
                                                         (-3.0 * b * b * b + 5.0 * b * b - b - 1.0);
                                              },
                                              n1pi, f, loc);
                const double scale = std::abs(lhs) + std::abs(rhs1) + std::abs(rhs2) + 1.0;
                w18[i] = std::abs(lhs - rhs1 - rhs2) / scale;
            }
        }
    });
    auto vmax = [](const std::vector<double>& v) {
        double m = 0.0;
        for (double x : v) m = std::max(m, x);
        return m;
    };
    VerificationReport rep;
    rep.checks.push_back(
        make_check("radial Laplacian under the integral", "lap-under-integral", vmax(w16), 1e-9));
    rep.checks.push_back(make_check("sin(2f)/r^2 integral identity", "sin2f-integral", vmax(w17), 1e-9));
    rep.checks.push_back(
        make_check("sin^2(f) sin(2f)/r^4 integral identity", "sin2f-sin2-integral", vmax(w18), 1e-9));
    return rep;
}

VerificationReport check_time_derivative_identity(const std::vector<SamplePoint>& samples,
                                                  const QuadratureSpec& spec) {
    QuadratureSpec qs = spec;
    qs.abs_tol = 1e-14;
    qs.rel_tol = 1e-13;
    std::vector<double> worst(samples.size(), 0.0);
    parallel_for(samples.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const auto& sp = samples[i];
            const double r = sp.r;
            const double phi_r = sp.N1 * kPi;  // axis-side profile value
            const double g = sp.f_offset / std::max(r, 1.0);  // keep integration ranges moderate
            auto phi_of = [&](double gv) {
                return integrate_0_to(gv, [r, phi_r](double y) { return std::sqrt(eval_B(r, y, phi_r)); }, qs);
            };
            // Fourth-order stencil at two spacings, Richardson-combined; the
            // kernel oscillates on scale 1/r in g, so the raw stencil alone
            // is not uniformly accurate over the sample set.
            auto fd4 = [&](double d) {
                return (-phi_of(g + 2 * d) + 8 * phi_of(g + d) - 8 * phi_of(g - d) +
                        phi_of(g - 2 * d)) /
                       (12 * d);
            };
            const double d = 1e-2;
            const double fd = (16.0 * fd4(0.5 * d) - fd4(d)) / 15.0;
            const double closed = std::sqrt(eval_B(r, g, phi_r));
            worst[i] = std::abs(fd - closed) / (std::abs(closed) + 1.0);
        }
    });
    double m = 0.0;
    for (double x : worst) m = std::max(m, x);
    VerificationReport rep;
    rep.checks.push_back(make_check("time-derivative chain rule of Phi", "dtphi-chain", m, 1e-9));
    return rep;
}

VerificationReport check_radial_derivative_identity(std::uint64_t seed, const QuadratureSpec& spec) {
    QuadratureSpec qs = spec;
    qs.abs_tol = 1e-14;
    qs.rel_tol = 1e-13;
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    std::uniform_real_distribution<double> uc(-3.0, 3.0);
    double worst = 0.0;
    for (int trial = 0; trial < 6; ++trial) {
        const double c = trial == 0 ? 1.7 : uc(rng);
        const int N1 = trial % 2;
        auto gfun = [c](double r) { return c * std::exp(-r * r); };
        auto gder = [c](double r) { return -2.0 * r * c * std::exp(-r * r); };
        auto phi_at = [&](double r) {
            return integrate_0_to(gfun(r), [r](double y) { return std::sqrt(eval_B2(r, y)); }, qs);
        };
        for (int k = 0; k < 8; ++k) {
            const double r = 1e-3 * std::pow(400.0, k / 7.0);  // up to 0.4
            auto fd4 = [&](double d) {
                return (-phi_at(r + 2 * d) + 8 * phi_at(r + d) - 8 * phi_at(r - d) +
                        phi_at(r - 2 * d)) /
                       (12 * d);
            };
            const double d = std::min(0.01, 0.25 * r);
            const double dphi = (16.0 * fd4(0.5 * d) - fd4(d)) / 15.0;
            const double lhs = dphi + 2.0 / r * phi_at(r);
            const double g = gfun(r);
            const double fr = g + r * gder(r);
            const double a1 = eval_B2(r, g);  // equals 1 + 2 sin^2 f/r^2 here
            const double rhs = std::sqrt(a1) * fr / r +
                               integrate_0_to(g, [r](double y) { return 1.0 / std::sqrt(eval_B2(r, y)); }, qs) / r;
            const double res = std::abs(lhs - rhs) / (std::abs(lhs) + std::abs(rhs) + 1.0);
            worst = std::max(worst, res);
            (void)N1;
        }
    }
    VerificationReport rep;
    rep.checks.push_back(make_check("radial-derivative split of Phi", "radial-split", worst, 1e-9));
    return rep;
}

VerificationReport check_hardy_family(int N, double R) {
    const RadialGrid grid = RadialGrid::make(N, R, 5);
    const double sharp = 4.0 / 9.0;
    // Powers r^{-3/2 + 1/n}, mollified at the origin on a few-cell scale and
    // truncated by a log-profile envelope. The log shape keeps the envelope
    // gradient cost near its variational minimum, which is what lets the
    // ratio climb past 0.42 on an affordable grid.
    const double r_plateau = 0.5;
    const double r_outer = R - 2.0;
    const double delta = 4.0 * grid.h;
    auto envelope = [&](double r) {
        if (r <= r_plateau) return 1.0;
        const double u = std::log(r_outer / r) / std::log(r_outer / r_plateau);
        if (u <= 0.0) return 0.0;
        if (u >= 1.0) return 1.0;
        return u * u * (3.0 - 2.0 * u);
    };
    std::vector<double> ratios;
    for (int n : {1, 2, 3, 4, 6, 8}) {
        Field f(N, Parity::even);
        const double p = -1.5 + 1.0 / n;
        for (int j = 0; j < N; ++j) {
            const double r = grid.r(j);
            f[j] = std::pow(r * r + delta * delta, 0.5 * p) * envelope(r);
        }
        ratios.push_back(hardy_ratio(f, grid));
    }
    bool monotone = true;
    for (std::size_t i = 1; i < ratios.size(); ++i)
        if (ratios[i] <= ratios[i - 1]) monotone = false;
    double maxr = 0.0;
    for (double x : ratios) maxr = std::max(maxr, x);
    VerificationReport rep;
    std::ostringstream det;
    det << "ratios:";
    for (double x : ratios) det << ' ' << x;
    rep.checks.push_back(make_check("hardy family monotone increase", "hardy-sharp-monotone",
                                    monotone ? 0.0 : 1.0, 0.5, det.str()));
    rep.checks.push_back(make_check("hardy family final ratio above 0.42", "hardy-sharp-approach",
                                    0.42 - ratios.back(), 0.0));
    rep.checks.push_back(make_check("hardy ratio below sharp constant", "hardy-sharp-bound",
                                    maxr - (sharp + 10.0 * grid.h), 0.0));
    return rep;
}

PhiResidual residual_phi_equation(const SimState& prev, const SimState& mid, const SimState& next,
                                  const QuadratureSpec& spec) {
    const RadialGrid& grid = mid.grid;
    const double dt = mid.t - prev.t;
    if (std::abs((next.t - mid.t) - dt) > 1e-12 * std::max(1.0, std::abs(dt)))
        throw std::invalid_argument("residual_phi_equation: snapshots not equally spaced");
    const Field phi_m = compute_Phi(prev, spec);
    const Field phi_0 = compute_Phi(mid, spec);
    const Field phi_p = compute_Phi(next, spec);
    const Field lap = laplacian(phi_0, grid);
    const Field g3 = g3_integral(mid, spec);
    const Field src = phi_equation_source(grid, mid.model.N1, spec);

    PhiResidual out;
    out.residual = Field(grid.N, Parity::even);
    std::vector<double> sq_in, sq_mid, sq_out, sq_all;
    for (int j = 0; j < grid.N; ++j) {
        const double r = grid.r(j);
        const double dtt = (phi_p[j] - 2.0 * phi_0[j] + phi_m[j]) / (dt * dt);
        const double res = dtt - lap[j] - (src[j] - 1.5 * phi_0[j] + g3[j]);
        out.residual[j] = res;
        out.linf = std::max(out.linf, std::abs(res));
        const double w = res * res * r * r * r * r * grid.h * sphere_area(5);
        sq_all.push_back(w);
        if (r < 0.5) sq_in.push_back(w);
        else if (r < 2.0) sq_mid.push_back(w);
        else sq_out.push_back(w);
    }
    out.l2 = std::sqrt(pairwise_sum(sq_all));
    out.l2_inner = std::sqrt(pairwise_sum(sq_in));
    out.l2_mid = std::sqrt(pairwise_sum(sq_mid));
    out.l2_outer = std::sqrt(pairwise_sum(sq_out));
    return out;
}

Lemma1Scan lemma1_scan(double r_max, double beta_max, int per_pi, int n_r) {
    if (per_pi < 256) throw std::invalid_argument("lemma1_scan: per_pi resolution below floor (256)");
    if (n_r < 2) throw std::invalid_argument("lemma1_scan: need at least 2 radii");
    Lemma1Scan out;
    out.r_max = r_max;
    out.beta_max = beta_max;
    out.per_pi = per_pi;
    out.n_r = n_r;

    const double r_min = 1e-4;
    // Lattice spacing pinned to pi/per_pi so the one-period value sits
    // exactly at index per_pi; the scan covers at least beta_max.
    const double db = kPi / per_pi;
    const long n_beta = std::lround(std::ceil(beta_max / db));

    std::vector<double> radii(static_cast<std::size_t>(n_r));
    for (int i = 0; i < n_r; ++i)
        radii[static_cast<std::size_t>(i)] =
            std::exp(std::log(r_min) + (std::log(r_max) - std::log(r_min)) * i / (n_r - 1));

    std::vector<double> row_min(static_cast<std::size_t>(n_r)), row_argmin(static_cast<std::size_t>(n_r));
    std::vector<double> row_period(static_cast<std::size_t>(n_r));
    std::vector<char> row_minima_ok(static_cast<std::size_t>(n_r), 1);

    parallel_for(static_cast<std::size_t>(n_r), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const double r = radii[i];
            auto integrand = [r](double y) {
                const double s = std::sin(y);
                return std::sqrt(r * r + 2.0 * s * s) * (0.75 - s * s);
            };
            std::vector<double> F(static_cast<std::size_t>(n_beta) + 1, 0.0);
            double running = 0.0, mn = 0.0, arg = 0.0;
            for (long k = 0; k < n_beta; ++k) {
                running += gl16_panel(integrand, k * db, (k + 1) * db);
                F[static_cast<std::size_t>(k) + 1] = running;
                if (running < mn) {
                    mn = running;
                    arg = (k + 1) * db;
                }
            }
            row_min[i] = mn;
            row_argmin[i] = arg;
            row_period[i] = F[static_cast<std::size_t>(per_pi)];  // value at beta = pi
            // Interior sampled minima must sit near j pi + pi/3 or j pi + 2 pi/3.
            for (long k = 1; k < n_beta; ++k) {
                if (F[static_cast<std::size_t>(k)] < F[static_cast<std::size_t>(k) - 1] &&
                    F[static_cast<std::size_t>(k)] < F[static_cast<std::size_t>(k) + 1]) {
                    const double beta = k * db;
                    const double m = std::fmod(beta, kPi);
                    const double d = std::min(std::abs(m - kPi / 3.0), std::abs(m - 2.0 * kPi / 3.0));
                    if (d > 2.5 * db) row_minima_ok[i] = 0;
                }
            }
        }
    });

    out.global_min = 0.0;
    for (int i = 0; i < n_r; ++i) {
        if (row_min[static_cast<std::size_t>(i)] < out.global_min) {
            out.global_min = row_min[static_cast<std::size_t>(i)];
            out.argmin_r = radii[static_cast<std::size_t>(i)];
            out.argmin_beta = row_argmin[static_cast<std::size_t>(i)];
        }
        if (!row_minima_ok[static_cast<std::size_t>(i)]) out.minima_near_critical_points = false;
    }
    out.r0 = 0.0;
    for (int i = 0; i < n_r; ++i) {
        if (row_min[static_cast<std::size_t>(i)] < -1e-12) break;
        if (radii[static_cast<std::size_t>(i)] <= 0.5) out.r0 = radii[static_cast<std::size_t>(i)];
    }
    out.r1 = 0.0;
    for (int i = 0; i < n_r; ++i) {
        if (row_period[static_cast<std::size_t>(i)] < 1.0 / 12.0 - 1e-10) break;
        out.r1 = radii[static_cast<std::size_t>(i)];
    }
    out.smallest_r_period = row_period[0];
    out.pure_sine_value = integrate([](double y) {
        const double s = std::sin(y);
        return s * (0.75 - s * s);
    }, 0.0, kPi);
    return out;
}

Corollary1Scan corollary1_scan(double r0, double z_max, int resolution) {
    if (resolution < 64) throw std::invalid_argument("corollary1_scan: resolution below floor (64)");
    if (!(r0 > 0.0)) throw std::invalid_argument("corollary1_scan: r0 must be positive");
    Corollary1Scan out;
    out.r0 = r0;
    out.z_max = z_max;
    out.resolution = resolution;

    std::vector<double> row_min(static_cast<std::size_t>(resolution), 0.0);
    std::vector<double> row_arg(static_cast<std::size_t>(resolution), 0.0);

    // z grid: resolution values spanning [-z_max, z_max]; each row is marched
    // cumulatively outward from z = 0 in both directions.
    std::vector<double> zs(static_cast<std::size_t>(resolution));
    for (int j = 0; j < resolution; ++j)
        zs[static_cast<std::size_t>(j)] = -z_max + 2.0 * z_max * j / (resolution - 1);

    parallel_for(static_cast<std::size_t>(resolution), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const double r = r0 * (static_cast<double>(i) + 1.0) / resolution;
            auto b2 = [r](double y) { return eval_B2(r, y); };
            auto g2i = [&](double y) { return std::sqrt(b2(y)); };
            auto g0i = [&](double y) {
                const double b = b2(y);
                return std::sqrt(b) * (b - 1.0);
            };
            double best = std::numeric_limits<double>::infinity(), besta = 0.0;
            auto march = [&](bool positive) {
                double g0 = 0.0, g1 = 0.0, g2 = 0.0, za = 0.0;
                // visit the requested z samples in outward order
                std::vector<double> order;
                for (double z : zs)
                    if ((positive && z > 0.0) || (!positive && z < 0.0)) order.push_back(z);
                std::sort(order.begin(), order.end(),
                          [&](double a, double b) { return std::abs(a) < std::abs(b); });
                for (double zb : order) {
                    // G1 increment needs G0 inside the interval: cumulative
                    // sub-integrals across the panel nodes.
                    const GaussLegendre16& gl = GaussLegendre16::get();
                    const double mid = 0.5 * (za + zb), half = 0.5 * (zb - za);
                    double g0_node = g0, prev = za;
                    std::array<double, 16> vals;
                    for (int q = 0; q < 16; ++q) {
                        const double w = mid + half * gl.x[q];
                        g0_node += gl16_panel(g0i, prev, w);
                        prev = w;
                        vals[static_cast<std::size_t>(q)] = gl.w[q] * g0_node * g2i(w);
                    }
                    g1 += 1.5 * half * pairwise_sum(vals);
                    g2 += gl16_panel(g2i, za, zb);
                    g0 += gl16_panel(g0i, za, zb);
                    const double margin = 9.0 / 8.0 * g2 * g2 / (r * r) - std::abs(g1);
                    if (margin < best) {
                        best = margin;
                        besta = zb;
                    }
                    za = zb;
                }
            };
            march(true);
            march(false);
            // z = 0 has margin exactly 0 when sampled; include it if present.
            for (double z : zs)
                if (z == 0.0 && 0.0 < best) {
                    best = 0.0;
                    besta = 0.0;
                }
            row_min[i] = best;
            row_arg[i] = besta;
        }
    });

    out.min_margin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < resolution; ++i) {
        if (row_min[static_cast<std::size_t>(i)] < out.min_margin) {
            out.min_margin = row_min[static_cast<std::size_t>(i)];
            out.argmin_r = r0 * (i + 1.0) / resolution;
            out.argmin_z = row_arg[static_cast<std::size_t>(i)];
        }
    }
    return out;
}

namespace {

// Cubic interpolation of a fine-grid field to the coarse cell centers
// (coarse node sits midway between fine nodes 2j and 2j+1).
double restrict_to_coarse(const Field& fine, int j) {
    const int k = 2 * j;
    auto at = [&](int idx) {
        if (idx < 0) return fine[-1 - idx];  // even mirror
        if (idx >= fine.size()) return fine[fine.size() - 1];
        return fine[idx];
    };
    return (-at(k - 1) + 9.0 * at(k) + 9.0 * at(k + 1) - at(k + 2)) / 16.0;
}

}  // namespace

ConvergenceStudy convergence_study(double amplitude, int base_N, int levels, double t_star,
                                   const QuadratureSpec& spec) {
    if (levels < 3) throw std::invalid_argument("convergence_study: need at least 3 levels");
    ConvergenceStudy out;
    const double R = 16.0;
    std::vector<SimState> finals;
    for (int l = 0; l < levels; ++l) {
        const int N = base_N << l;
        out.grid_sizes.push_back(N);
        const RadialGrid grid = RadialGrid::make(N, R, 5);
        ModelParams mp;
        SimState s = make_initial_state(grid, mp, {amplitude, 0.0, 1.0}, {0.0, 0.0, 1.0});
        const double dt = 0.25 * grid.h;
        const long steps = std::lround(t_star / dt);
        const double E0 = skyrme_energy(s);
        double drift = 0.0;
        SimState prev = s;
        for (long k = 1; k <= steps + 1; ++k) {
            prev = s;
            s = step(s, dt);
            if (k % 64 == 0 || k >= steps) drift = std::max(drift, std::abs(skyrme_energy(s) - E0) / (E0 > 0 ? E0 : 1.0));
        }
        // s is now at t_star + dt, prev at t_star; build the triple around t_star.
        SimState prev2 = prev;  // t_star - dt
        {
            SimState tmp = prev;
            // step backwards one dt from prev to get t_star - dt
            tmp = step(tmp, -dt);
            prev2 = tmp;
        }
        out.energy_drifts.push_back(drift);
        const PhiResidual pr = residual_phi_equation(prev2, prev, s, spec);
        out.phi_residuals.push_back(pr.l2);
        // time-derivative identity at t_star via centered difference
        const Field phi_m = compute_Phi(prev2, spec), phi_p = compute_Phi(s, spec);
        const Field dtphi = compute_dtPhi(prev);
        double e9 = 0.0;
        for (int j = 0; j < grid.N; ++j)
            e9 = std::max(e9, std::abs((phi_p[j] - phi_m[j]) / (2.0 * dt) - dtphi[j]));
        out.dtphi_errors.push_back(e9);
        finals.push_back(prev);  // state at t_star
    }
    // solution self-errors between consecutive levels
    for (int l = 0; l + 1 < levels; ++l) {
        const RadialGrid gc = finals[static_cast<std::size_t>(l)].grid;
        Field diff(gc.N, Parity::even);
        for (int j = 0; j < gc.N; ++j)
            diff[j] = finals[static_cast<std::size_t>(l)].g[j] -
                      restrict_to_coarse(finals[static_cast<std::size_t>(l + 1)].g, j);
        out.solution_errors.push_back(norm_L2(diff, gc));
    }
    bool ok = true;
    out.order_solution = fit_order(out.solution_errors, ok);
    bool ok2 = true;
    out.order_phi_residual = fit_order(out.phi_residuals, ok2);
    bool ok3 = true;
    out.order_dtphi = fit_order(out.dtphi_errors, ok3);
    bool ok4 = true;
    out.order_energy = fit_order(out.energy_drifts, ok4);
    out.conclusive = ok && ok2 && ok3;
    if (!out.conclusive) out.note = "non-monotone or below-roundoff errors";
    return out;
}

VerificationReport run_suite(const std::string& name, std::uint64_t seed) {
    VerificationReport rep;
    const bool all = name == "all";
    if (name == "identities" || all) {
        const auto samples = identity_samples(seed);
        rep.append(check_cancellation_identities(samples));
        rep.append(check_integral_identities(samples));
        rep.append(check_time_derivative_identity(samples));
        rep.append(check_radial_derivative_identity(seed));
    }
    if (name == "inequalities" || all) {
        const Lemma1Scan l1 = lemma1_scan();
        rep.checks.push_back(make_check("weight positivity scan minimum", "weight-positivity",
                                        -l1.global_min, 1e-12,
                                        "r0=" + std::to_string(l1.r0)));
        rep.checks.push_back(make_check("single-period sine integral equals 1/6", "period-sine-sixth",
                                        std::abs(l1.pure_sine_value - 1.0 / 6.0), 1e-12));
        rep.checks.push_back(make_check("small-r period lower bound 1/12", "period-lower-bound",
                                        1.0 / 12.0 - l1.smallest_r_period, 1e-10,
                                        "r1=" + std::to_string(l1.r1)));
        rep.checks.push_back(make_check("scan minima near critical angles", "min-locations",
                                        l1.minima_near_critical_points ? 0.0 : 1.0, 0.5));
        rep.checks.push_back(make_check("scan returned positive r0", "positive-r0", -l1.r0, -1e-6));
        const Corollary1Scan c1 = corollary1_scan(l1.r0 > 0 ? l1.r0 : 0.5);
        rep.checks.push_back(make_check("nested envelope bound margin", "envelope-bound",
                                        -c1.min_margin, 1e-10));
        double even_worst = 0.0;
        for (double z : {1.0, 2.5, 7.0}) {
            const double r = 0.1;
            const double d = std::abs(eval_G1(r, z) - eval_G1(r, -z));
            even_worst = std::max(even_worst, d / (std::abs(eval_G1(r, z)) + 1.0));
        }
        rep.checks.push_back(make_check("envelope kernel even in z", "envelope-even", even_worst, 1e-9));
        rep.append(check_hardy_family());
    }
    if (name == "convergence" || all) {
        const ConvergenceStudy cs = convergence_study(0.5, 256, 3, 1.0);
        rep.checks.push_back(make_check("field self-convergence order", "order-solution",
                                        std::abs(cs.order_solution - 2.0), 0.5));
        rep.checks.push_back(make_check("wave-equation residual convergence order", "order-phi-residual",
                                        std::abs(cs.order_phi_residual - 2.0), 0.5));
        rep.checks.push_back(make_check("time-derivative identity convergence order", "order-dtphi",
                                        std::abs(cs.order_dtphi - 2.0), 0.7));
    }
    if (rep.checks.empty() && !all)
        throw std::invalid_argument("unknown verification suite: " + name);
    return rep;
}

}  // namespace skyrsim
