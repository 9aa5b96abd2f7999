#include "skyrsim/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace skyrsim {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

double ghost(const Field& f, int k) {
    // Virtual node at r = -(k + 1/2) h mirrors node k.
    return *f.parity == Parity::even ? f[k] : -f[k];
}

}  // namespace

RadialGrid RadialGrid::make(int N, double R, int dim) {
    if (N < 4) throw std::invalid_argument("RadialGrid needs N >= 4");
    if (!(R > 0.0)) throw std::invalid_argument("RadialGrid needs R > 0");
    if (dim != 3 && dim != 5) throw std::invalid_argument("RadialGrid dim must be 3 or 5");
    RadialGrid g;
    g.N = N;
    g.h = R / N;
    g.dim = dim;
    return g;
}

bool Field::finite() const {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

Field laplacian(const Field& f, const RadialGrid& grid) {
    if (!f.parity) throw std::logic_error("laplacian: field parity unset");
    if (f.size() != grid.N) throw std::invalid_argument("laplacian: field/grid size mismatch");
    const int N = grid.N;
    const double h = grid.h;
    const double dm1 = grid.dim - 1;
    // Conservative face-flux form of d_rr + (d-1)/r d_r:
    //   (1/V_j) [ r^{d-1} f' ]_{faces},  V_j = int_cell r^{d-1} dr.
    // Faces sit at r = j h; the r = 0 face flux vanishes identically, which
    // is what keeps the axis cell well behaved. Exact for f = r^2 at every
    // node. The outer face derivative is closed one-sidedly.
    auto face_pow = [&](int j) {  // r_{j+1/2}^{d-1}
        const double rf = j * h + h;
        double p = 1.0;
        for (int k = 0; k < grid.dim - 1; ++k) p *= rf;
        return p;
    };
    Field out(N, *f.parity);
    double flux_lo = 0.0;  // r^{d-1} f' at the inner face of cell j
    double pow_lo = 0.0;
    for (int j = 0; j < N; ++j) {
        const double pow_hi = face_pow(j);
        double dface;
        if (j == N - 1) {
            // second-order one-sided slope at the r = R face
            dface = (2.0 * f[N - 1] - 3.0 * f[N - 2] + f[N - 3]) / h;
        } else {
            dface = (f[j + 1] - f[j]) / h;
        }
        const double flux_hi = pow_hi * dface;
        const double vol = (pow_hi * (j + 1) * h - pow_lo * j * h) / (dm1 + 1.0);
        out[j] = (flux_hi - flux_lo) / vol;
        flux_lo = flux_hi;
        pow_lo = pow_hi;
    }
    return out;
}

Field gradient(const Field& f, const RadialGrid& grid) {
    if (!f.parity) throw std::logic_error("gradient: field parity unset");
    if (f.size() != grid.N) throw std::invalid_argument("gradient: field/grid size mismatch");
    const int N = grid.N;
    const double h = grid.h;
    Parity gp = *f.parity == Parity::even ? Parity::odd : Parity::even;
    Field out(N, gp);
    for (int j = 0; j < N; ++j) {
        if (j == N - 1) {
            out[j] = (3.0 * f[N - 1] - 4.0 * f[N - 2] + f[N - 3]) / (2.0 * h);
        } else {
            const double fm = j == 0 ? ghost(f, 0) : f[j - 1];
            out[j] = (f[j + 1] - fm) / (2.0 * h);
        }
    }
    return out;
}

double sphere_area(int dim) {
    if (dim == 3) return 4.0 * kPi;
    if (dim == 5) return 8.0 * kPi * kPi / 3.0;
    throw std::invalid_argument("sphere_area: dim must be 3 or 5");
}

namespace {

double weighted_square_sum(const std::vector<double>& vals, const RadialGrid& grid, int rpow_extra) {
    std::vector<double> terms(vals.size());
    for (int j = 0; j < static_cast<int>(vals.size()); ++j) {
        const double r = grid.r(j);
        double w = 1.0;
        for (int k = 0; k < grid.dim - 1 + rpow_extra; ++k) w *= r;
        terms[static_cast<std::size_t>(j)] = vals[static_cast<std::size_t>(j)] * vals[static_cast<std::size_t>(j)] * w;
    }
    return pairwise_sum(terms) * grid.h;
}

}  // namespace

double norm_L2(const Field& f, const RadialGrid& grid) {
    return std::sqrt(sphere_area(grid.dim) * weighted_square_sum(f.v, grid, 0));
}

double norm_H1(const Field& f, const RadialGrid& grid) {
    const Field g = gradient(f, grid);
    const double a = weighted_square_sum(f.v, grid, 0);
    const double b = weighted_square_sum(g.v, grid, 0);
    return std::sqrt(sphere_area(grid.dim) * (a + b));
}

double weighted_sup(const Field& f, const RadialGrid& grid) {
    double m = 0.0;
    for (int j = 0; j < f.size(); ++j) {
        const double r = grid.r(j);
        const double w = std::sqrt(1.0 + r * r) * std::abs(f[j]);
        if (w > m) m = w;
    }
    return m;
}

double hardy_ratio(const Field& f, const RadialGrid& grid) {
    const Field g = gradient(f, grid);
    const double den = weighted_square_sum(g.v, grid, 0);
    if (den == 0.0) throw std::domain_error("hardy_ratio: gradient vanishes identically");
    const double num = weighted_square_sum(f.v, grid, -2);
    return num / den;
}

double coercivity_functional(const Field& phi, const RadialGrid& grid) {
    if (grid.dim != 5) throw std::invalid_argument("coercivity_functional requires dim == 5");
    const Field g = gradient(phi, grid);
    const double a = weighted_square_sum(g.v, grid, 0);
    const double b = weighted_square_sum(phi.v, grid, -2);
    return sphere_area(5) * (a - 2.25 * b);
}

}  // namespace skyrsim
