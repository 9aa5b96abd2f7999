#pragma once

#include <array>
#include <cmath>

#include "skyrsim/quadrature.hpp"

namespace skyrsim {

// Closed-form auxiliary functions of the hedgehog field equation and the
// smooth cutoff profiles. All removable singularities at the origin are
// evaluated by even-power Taylor series below a switch radius; closed forms
// take over outside it.

// C-infinity monotone transition on [0,1] built from exp(-1/t).
struct SmoothStep {
    static double value(double t);
    static double d1(double t);
    static double d2(double t);
};

// F~i(x) = Fi(x^2), i = 0..4:
//   F~0(x) = 2 (sin x / x)^2
//   F~1(x) = 2/x^2 - sin(2x)/x^3
//   F~2(x) = sin(2x)/x^3 - sin^2(x) sin(2x)/x^5
//   F~3(x) = sin(2x)/x
//   F~4(x) = -4 sin^2(x)/x^4 + 2 sin(2x)/x^3
class KernelTable {
  public:
    static constexpr int kTerms = 16;       // even-power Taylor terms per function
    static constexpr double kSwitch = 0.5;  // |x| below this uses the series

    KernelTable();
    static const KernelTable& standard();

    double ftilde(int i, double x) const;       // series/closed dispatch
    double series_only(int i, double x) const;  // exposed for the agreement band test
    double closed_only(int i, double x) const;

    double switch_radius() const { return kSwitch; }

  private:
    // coeff_[i][n] multiplies u^n, u = x^2.
    std::array<std::array<double, kTerms>, 5> coeff_{};
};

double eval_Ftilde(int i, double x);

// A1 = 1 + 2 sin^2(f)/r^2, the quasilinear factor of the f-equation.
double eval_A1(double r, double f);

// B(r, y) = 1 + 2 sin^2(r y + phi_r)/r^2. When phi_r is an integer multiple
// of pi the argument reduces mod pi and the expression is evaluated through
// F~0(r y) y^2, which stays smooth (limit 1 + 2 y^2) as r -> 0.
double eval_B(double r, double y, double phi_r);

// B1 = 1 + 2 sin^2(y)/r^2 (no scaling of the integration variable).
inline double eval_B1(double r, double y) {
    const double s = std::sin(y);
    return 1.0 + 2.0 * s * s / (r * r);
}

// B2 = 1 + 2 sin^2(r y)/r^2, the phi = 0 (mod pi) case of B.
inline double eval_B2(double r, double y) {
    return 1.0 + eval_Ftilde(0, r * y) * y * y;
}

// Boundary profile phi(r): N1*pi for r <= 1, 0 for r >= 2, C-infinity
// monotone in between. d1/d2 are exact derivatives of the transition.
class CutoffPhi {
  public:
    explicit CutoffPhi(int N1) : N1_(N1) {}
    int N1() const { return N1_; }
    double operator()(double r) const;
    double d1(double r) const;
    double d2(double r) const;
    double laplacian3(double r) const { return d2(r) + 2.0 * d1(r) / r; }

  private:
    int N1_;
};

double phi_lt1(double r);              // 1 for r <= 1/2, 0 for r >= 1
inline double phi_gt1(double r) { return 1.0 - phi_lt1(r); }
double phi_below(double r, double r0);  // 1 for r <= r0/2, 0 for r >= r0
double phi_gtrsim1(double r);           // 0 for r <= 1, 1 for r >= 2

// Nested envelope functions on (0, inf) x R:
//   G0(r, w) = int_0^w B2^{1/2} (B2 - 1) dy
//   G1(r, z) = (3/2) int_0^z G0(r, w) B2(r, w)^{1/2} dw
//   G2(r, w) = int_0^w B2^{1/2} dy
double eval_G0(double r, double w, const QuadratureSpec& spec = {});
double eval_G1(double r, double z, const QuadratureSpec& spec = {});
double eval_G2(double r, double w, const QuadratureSpec& spec = {});

// F(r, beta) = int_0^beta (r^2 + 2 sin^2 y)^{1/2} (3/4 - sin^2 y) dy.
// Its nonnegativity on a small-r strip is what the envelope bound rests on.
double lemma1_F(double r, double beta, const QuadratureSpec& spec = {});

}  // namespace skyrsim
