#pragma once

#include <optional>
#include <vector>

#include "skyrsim/util.hpp"

namespace skyrsim {

// Cell-centered uniform radial mesh: nodes r_j = (j + 1/2) h, j = 0..N-1.
// No node sits at r = 0; the origin is handled through parity ghost cells.
struct RadialGrid {
    int N = 0;
    double h = 0.0;
    int dim = 5;  // ambient dimension, 3 or 5

    static RadialGrid make(int N, double R, int dim);
    double R() const { return N * h; }
    double r(int j) const { return (j + 0.5) * h; }
};

// Behavior of the smooth radial extension under r -> -r.
enum class Parity { even, odd };

struct Field {
    std::vector<double> v;
    std::optional<Parity> parity;

    Field() = default;
    Field(int n, Parity p) : v(static_cast<std::size_t>(n), 0.0), parity(p) {}
    int size() const { return static_cast<int>(v.size()); }
    double& operator[](int j) { return v[static_cast<std::size_t>(j)]; }
    double operator[](int j) const { return v[static_cast<std::size_t>(j)]; }
    bool finite() const;
};

// Second-order Delta_d = d_rr + (d-1)/r d_r with parity ghost cells across
// r = 0 and one-sided closure at r = R. Throws std::logic_error if parity
// is unset.
Field laplacian(const Field& f, const RadialGrid& grid);

// Central-difference radial derivative with the same ghost/closure rules.
Field gradient(const Field& f, const RadialGrid& grid);

double sphere_area(int dim);  // omega_{d-1}: 4*pi for d=3, 8*pi^2/3 for d=5

double norm_L2(const Field& f, const RadialGrid& grid);
double norm_H1(const Field& f, const RadialGrid& grid);
double weighted_sup(const Field& f, const RadialGrid& grid);  // max <r_j> |f_j|

// int f^2/r^2 dx / int |grad f|^2 dx. Throws std::domain_error when the
// gradient vanishes identically.
double hardy_ratio(const Field& f, const RadialGrid& grid);

// int_{R^5} (|grad phi|^2 - (9/4) phi^2/r^2) dx; requires grid.dim == 5.
double coercivity_functional(const Field& phi, const RadialGrid& grid);

}  // namespace skyrsim
