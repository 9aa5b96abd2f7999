#include "skyrsim/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace skyrsim {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

// Below this the transition is identically 0/1; exp(-1/t) underflows long
// before, so no smoothness is lost.
constexpr double kStepClip = 1e-6;

double q_exp(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

}  // namespace

double SmoothStep::value(double t) {
    if (t <= kStepClip) return 0.0;
    if (t >= 1.0 - kStepClip) return 1.0;
    const double a = q_exp(t), b = q_exp(1.0 - t);
    return a / (a + b);
}

double SmoothStep::d1(double t) {
    if (t <= kStepClip || t >= 1.0 - kStepClip) return 0.0;
    const double a = q_exp(t), b = q_exp(1.0 - t);
    const double d = a + b;
    const double u = 1.0 - t;
    const double w = 1.0 / (t * t) + 1.0 / (u * u);
    return a * b * w / (d * d);
}

double SmoothStep::d2(double t) {
    if (t <= kStepClip || t >= 1.0 - kStepClip) return 0.0;
    const double a = q_exp(t), b = q_exp(1.0 - t);
    const double u = 1.0 - t;
    const double d = a + b;
    const double p = a * b;
    const double w = 1.0 / (t * t) + 1.0 / (u * u);
    const double v = 1.0 / (t * t) - 1.0 / (u * u);
    const double wp = -2.0 / (t * t * t) + 2.0 / (u * u * u);
    const double dp = a / (t * t) - b / (u * u);
    return (p * v * w + p * wp) / (d * d) - 2.0 * p * w * dp / (d * d * d);
}

KernelTable::KernelTable() {
    // Taylor coefficients in u = x^2, derived from the sine series:
    //   F0: (-1)^n 2^{2n+2} / (2n+2)!
    //   F1: (-1)^n 2^{2n+3} / (2n+3)!
    //   F2: (-1)^n [ (16^{n+2} - 4^{n+2})/(2n+5)! - 2^{2n+3}/(2n+3)! ]
    //   F3: (-1)^n 2^{2n+1} / (2n+1)!
    //   F4: (-1)^n [ 2^{2n+5}/(2n+4)! - 2^{2n+4}/(2n+3)! ]
    long double fact[64];
    fact[0] = 1.0L;
    for (int k = 1; k < 64; ++k) fact[k] = fact[k - 1] * k;
    auto p2 = [](int e) {
        long double v = 1.0L;
        for (int i = 0; i < e; ++i) v *= 2.0L;
        return v;
    };
    for (int n = 0; n < kTerms; ++n) {
        const long double sgn = (n % 2 == 0) ? 1.0L : -1.0L;
        coeff_[0][static_cast<std::size_t>(n)] = static_cast<double>(sgn * p2(2 * n + 2) / fact[2 * n + 2]);
        coeff_[1][static_cast<std::size_t>(n)] = static_cast<double>(sgn * p2(2 * n + 3) / fact[2 * n + 3]);
        coeff_[2][static_cast<std::size_t>(n)] = static_cast<double>(
            sgn * ((p2(4 * (n + 2)) - p2(2 * (n + 2))) / fact[2 * n + 5] - p2(2 * n + 3) / fact[2 * n + 3]));
        coeff_[3][static_cast<std::size_t>(n)] = static_cast<double>(sgn * p2(2 * n + 1) / fact[2 * n + 1]);
        coeff_[4][static_cast<std::size_t>(n)] = static_cast<double>(
            sgn * (p2(2 * n + 5) / fact[2 * n + 4] - p2(2 * n + 4) / fact[2 * n + 3]));
    }
}

const KernelTable& KernelTable::standard() {
    static const KernelTable table;
    return table;
}

double KernelTable::series_only(int i, double x) const {
    const double u = x * x;
    const auto& c = coeff_[static_cast<std::size_t>(i)];
    double acc = c[kTerms - 1];
    for (int n = kTerms - 2; n >= 0; --n) acc = c[static_cast<std::size_t>(n)] + u * acc;
    return acc;
}

double KernelTable::closed_only(int i, double x) const {
    const double x2 = x * x;
    const double x3 = x2 * x;
    switch (i) {
        case 0: {
            const double s = std::sin(x) / x;
            return 2.0 * s * s;
        }
        case 1:
            return 2.0 / x2 - std::sin(2.0 * x) / x3;
        case 2: {
            const double s = std::sin(x);
            return std::sin(2.0 * x) / x3 - s * s * std::sin(2.0 * x) / (x3 * x2);
        }
        case 3:
            return std::sin(2.0 * x) / x;
        case 4: {
            const double s = std::sin(x);
            return -4.0 * s * s / (x2 * x2) + 2.0 * std::sin(2.0 * x) / x3;
        }
        default:
            throw std::domain_error("ftilde index out of range");
    }
}

double KernelTable::ftilde(int i, double x) const {
    if (i < 0 || i > 4) throw std::domain_error("ftilde index out of range");
    if (!std::isfinite(x)) throw std::domain_error("ftilde argument not finite");
    return std::abs(x) < kSwitch ? series_only(i, x) : closed_only(i, x);
}

double eval_Ftilde(int i, double x) { return KernelTable::standard().ftilde(i, x); }

double eval_A1(double r, double f) {
    if (!(r > 0.0) || !std::isfinite(r) || !std::isfinite(f)) throw std::domain_error("eval_A1 requires finite r > 0");
    const double s = std::sin(f);
    return 1.0 + 2.0 * s * s / (r * r);
}

double eval_B(double r, double y, double phi_r) {
    if (!(r > 0.0) || !std::isfinite(r)) throw std::domain_error("eval_B requires finite r > 0");
    const double k = std::round(phi_r / kPi);
    if (std::abs(phi_r - k * kPi) < 1e-9) {
        // sin^2(ry + k pi) = sin^2(ry); route through F~0 so r -> 0 is smooth.
        return 1.0 + eval_Ftilde(0, r * y) * y * y;
    }
    const double s = std::sin(r * y + phi_r);
    return 1.0 + 2.0 * s * s / (r * r);
}

double CutoffPhi::operator()(double r) const {
    if (N1_ == 0) return 0.0;
    if (r <= 1.0) return N1_ * kPi;
    if (r >= 2.0) return 0.0;
    return N1_ * kPi * (1.0 - SmoothStep::value(r - 1.0));
}

double CutoffPhi::d1(double r) const {
    if (N1_ == 0 || r <= 1.0 || r >= 2.0) return 0.0;
    return -N1_ * kPi * SmoothStep::d1(r - 1.0);
}

double CutoffPhi::d2(double r) const {
    if (N1_ == 0 || r <= 1.0 || r >= 2.0) return 0.0;
    return -N1_ * kPi * SmoothStep::d2(r - 1.0);
}

double phi_lt1(double r) {
    if (r <= 0.5) return 1.0;
    if (r >= 1.0) return 0.0;
    return 1.0 - SmoothStep::value(2.0 * (r - 0.5));
}

double phi_below(double r, double r0) {
    if (r <= 0.5 * r0) return 1.0;
    if (r >= r0) return 0.0;
    return 1.0 - SmoothStep::value(2.0 * r / r0 - 1.0);
}

double phi_gtrsim1(double r) {
    if (r <= 1.0) return 0.0;
    if (r >= 2.0) return 1.0;
    return SmoothStep::value(r - 1.0);
}

double eval_G0(double r, double w, const QuadratureSpec& spec) {
    if (!(r > 0.0)) throw std::domain_error("eval_G0 requires r > 0");
    return integrate_0_to(w, [r](double y) {
        const double b = eval_B2(r, y);
        return std::sqrt(b) * (b - 1.0);
    }, spec);
}

double eval_G2(double r, double w, const QuadratureSpec& spec) {
    if (!(r > 0.0)) throw std::domain_error("eval_G2 requires r > 0");
    return integrate_0_to(w, [r](double y) { return std::sqrt(eval_B2(r, y)); }, spec);
}

double eval_G1(double r, double z, const QuadratureSpec& spec) {
    if (!(r > 0.0)) throw std::domain_error("eval_G1 requires r > 0");
    // Inner integral gets a tighter budget so its noise stays below the
    // outer tolerance.
    QuadratureSpec inner = spec;
    inner.abs_tol = 0.1 * spec.abs_tol;
    inner.rel_tol = 0.1 * spec.rel_tol;
    return 1.5 * integrate_0_to(z, [r, &inner](double w) {
        return eval_G0(r, w, inner) * std::sqrt(eval_B2(r, w));
    }, spec);
}

double lemma1_F(double r, double beta, const QuadratureSpec& spec) {
    if (!(r >= 0.0) || !(beta >= 0.0)) throw std::domain_error("lemma1_F requires r >= 0, beta >= 0");
    return integrate_0_to(beta, [r](double y) {
        const double s = std::sin(y);
        return std::sqrt(r * r + 2.0 * s * s) * (0.75 - s * s);
    }, spec);
}

}  // namespace skyrsim
