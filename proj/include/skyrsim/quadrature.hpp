#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "skyrsim/util.hpp"

namespace skyrsim {

// Adaptive composite Gauss-Legendre integration, 16 points per panel.
// Panel count doubles until two consecutive composites agree within
// abs_tol + rel_tol*|result|.
struct QuadratureSpec {
    int order = 16;           // points per panel (fixed rule; kept for provenance)
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_panels = 1 << 14;
    int initial_panels = 1;
};

class QuadratureError : public std::runtime_error {
  public:
    QuadratureError(const std::string& what, double best, int panels)
        : std::runtime_error(what), best_estimate(best), panels_used(panels) {}
    double best_estimate;
    int panels_used;
};

// 16-point Gauss-Legendre nodes/weights on [-1, 1], computed once by Newton
// iteration on P16 to machine precision.
struct GaussLegendre16 {
    std::array<double, 16> x{};
    std::array<double, 16> w{};
    static const GaussLegendre16& get();
};

// Single 16-point panel over [a, b]. Exact for polynomials up to degree 31.
template <class F>
double gl16_panel(F&& f, double a, double b) {
    const GaussLegendre16& gl = GaussLegendre16::get();
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    std::array<double, 16> acc;
    for (int i = 0; i < 16; ++i) acc[i] = gl.w[i] * f(mid + half * gl.x[i]);
    return half * pairwise_sum(acc);
}

template <class F>
double gl16_composite(F&& f, double a, double b, int panels) {
    if (panels == 1) return gl16_panel(f, a, b);
    std::vector<double> parts(static_cast<std::size_t>(panels));
    const double h = (b - a) / panels;
    for (int k = 0; k < panels; ++k) parts[static_cast<std::size_t>(k)] = gl16_panel(f, a + k * h, a + (k + 1) * h);
    return pairwise_sum(parts);
}

template <class F>
double integrate(F&& f, double a, double b, const QuadratureSpec& spec = {}) {
    if (a == b) return 0.0;
    int n = spec.initial_panels < 1 ? 1 : spec.initial_panels;
    double prev = gl16_composite(f, a, b, n);
    while (2 * n <= spec.max_panels) {
        n *= 2;
        const double cur = gl16_composite(f, a, b, n);
        if (std::abs(cur - prev) <= spec.abs_tol + spec.rel_tol * std::abs(cur)) return cur;
        prev = cur;
    }
    throw QuadratureError("quadrature did not converge at max panel count", prev, n);
}

// Signed integral from 0 to g_val; for g_val < 0 this is -(integral over [g_val, 0]).
template <class F>
double integrate_0_to(double g_val, F&& f, const QuadratureSpec& spec = {}) {
    if (g_val == 0.0) return 0.0;
    if (g_val > 0.0) return integrate(f, 0.0, g_val, spec);
    return -integrate(f, g_val, 0.0, spec);
}

}  // namespace skyrsim
