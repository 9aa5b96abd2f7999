#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "skyrsim/dynamics.hpp"
#include "skyrsim/transforms.hpp"

namespace skyrsim {

// One verification entry: the measured residual (or margin), its tolerance,
// and a stable tag naming the identity or bound being certified.
struct CheckResult {
    std::string name;
    std::string eq_tag;
    double value = 0.0;
    double tol = 0.0;
    bool pass = false;
    std::string details;
};

struct VerificationReport {
    std::vector<CheckResult> checks;
    bool all_pass() const;
    void append(VerificationReport other);
    std::string table() const;
};

// Sample of the transformation chain at radius r and field value
// f = N1 pi + f_offset.
struct SamplePoint {
    double r = 1.0;
    double f_offset = 0.0;
    int N1 = 0;
};

// Log-spaced radii in [1e-3, 10] crossed with offsets in [-3 pi, 3 pi];
// the seed adds randomized extra draws on top of the fixed lattice.
std::vector<SamplePoint> identity_samples(std::uint64_t seed);

// Chain-rule cancellations of the first transformation (both identities).
VerificationReport check_cancellation_identities(const std::vector<SamplePoint>& samples);

// Laplacian-under-the-integral plus the two sin(2f) integral identities:
// closed forms against quadratures of the derivative combinations.
VerificationReport check_integral_identities(const std::vector<SamplePoint>& samples,
                                             const QuadratureSpec& spec = {});

// dPhi/dg = B^{1/2}: high-order finite difference of the quadrature against
// the closed form.
VerificationReport check_time_derivative_identity(const std::vector<SamplePoint>& samples,
                                                  const QuadratureSpec& spec = {});

// Radial-derivative split of Phi on r <= 1/2 for analytic test profiles.
VerificationReport check_radial_derivative_identity(std::uint64_t seed,
                                                    const QuadratureSpec& spec = {});

// Hardy-ratio sharpness on the truncated power family.
VerificationReport check_hardy_family(int N = 32768, double R = 64.0);

struct PhiResidual {
    Field residual;
    double l2 = 0.0;
    double linf = 0.0;
    double l2_inner = 0.0;  // r < 1/2
    double l2_mid = 0.0;    // 1/2 <= r < 2
    double l2_outer = 0.0;  // r >= 2
};

// Discrete wave-operator residual of the Phi equation from three
// consecutive snapshots of a run (equal spacing dt).
PhiResidual residual_phi_equation(const SimState& prev, const SimState& mid, const SimState& next,
                                  const QuadratureSpec& spec = {});

struct Lemma1Scan {
    double r0 = 0.0;               // largest scanned r <= 1/2 with F >= -1e-12 below it
    double r1 = 0.0;               // largest scanned r with the период bound >= 1/12 below it
    double global_min = 0.0;
    double argmin_r = 0.0;
    double argmin_beta = 0.0;
    double pure_sine_value = 0.0;  // int_0^pi sin(y)(3/4 - sin^2 y) dy
    double smallest_r_period = 0.0;
    bool minima_near_critical_points = true;
    double r_max = 0.5;
    double beta_max = 0.0;
    int per_pi = 256;
    int n_r = 0;
};

// Scans F(r, beta) over (0, r_max] x [0, beta_max]; per_pi >= 256 required.
Lemma1Scan lemma1_scan(double r_max = 0.5, double beta_max = 62.8318530717958648,
                       int per_pi = 256, int n_r = 128);

struct Corollary1Scan {
    double r0 = 0.0;
    double z_max = 0.0;
    int resolution = 512;
    double min_margin = 0.0;
    double argmin_r = 0.0;
    double argmin_z = 0.0;
};

// Scans (9/8) G2^2/r^2 - |G1| over (0, r0] x [-z_max, z_max]; resolution >= 64.
Corollary1Scan corollary1_scan(double r0, double z_max = 25.1327412287183459, int resolution = 512);

struct ConvergenceStudy {
    std::vector<int> grid_sizes;
    std::vector<double> solution_errors;
    std::vector<double> energy_drifts;
    std::vector<double> phi_residuals;
    std::vector<double> dtphi_errors;
    double order_solution = 0.0;
    double order_energy = 0.0;
    double order_phi_residual = 0.0;
    double order_dtphi = 0.0;
    bool conclusive = true;
    std::string note;
};

// Refinement study on nested grids N, 2N, 4N, ... with dt proportional to h.
ConvergenceStudy convergence_study(double amplitude, int base_N, int levels, double t_star,
                                   const QuadratureSpec& spec = {});

// Suites: "identities", "inequalities", "convergence", "all".
VerificationReport run_suite(const std::string& name, std::uint64_t seed);

}  // namespace skyrsim
