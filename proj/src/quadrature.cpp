#include "skyrsim/quadrature.hpp"

#include <cmath>

namespace skyrsim {

namespace {

// Legendre P_n and derivative at x by the three-term recurrence.
void legendre16(double x, double& p, double& dp) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= 16; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    p = p1;
    dp = 16.0 * (x * p1 - p0) / (x * x - 1.0);
}

GaussLegendre16 build_gl16() {
    GaussLegendre16 gl;
    constexpr int n = 16;
    for (int i = 0; i < n / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double p = 0.0, dp = 0.0;
        for (int it = 0; it < 64; ++it) {
            legendre16(x, p, dp);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        legendre16(x, p, dp);
        x -= p / dp;  // one polishing step
        legendre16(x, p, dp);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        gl.x[static_cast<std::size_t>(i)] = -x;
        gl.w[static_cast<std::size_t>(i)] = w;
        gl.x[static_cast<std::size_t>(n - 1 - i)] = x;
        gl.w[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    return gl;
}

}  // namespace

const GaussLegendre16& GaussLegendre16::get() {
    static const GaussLegendre16 gl = build_gl16();
    return gl;
}

}  // namespace skyrsim
