#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "skyrsim/dynamics.hpp"
#include "skyrsim/quadrature.hpp"

namespace skyrsim {

// Flat key = value run configuration; '#' starts a comment. Unknown keys are
// rejected so experiment records stay diffable.
struct RunConfig {
    int grid_N = 4096;
    double grid_R = 64.0;

    int model_N1 = 0;
    bool disable_skyrme_term = false;
    double dissipation = 0.0;

    // g0 and g1 pulse families
    double a0 = 5.0, rc0 = 0.0, sigma0 = 2.0;
    double a1 = 0.0, rc1 = 0.0, sigma1 = 2.0;

    double cfl = 0.25;
    double t_end = 10.0;
    int record_every = 64;
    double blowup_threshold = 1e6;

    double quad_abs_tol = 1e-12;
    double quad_rel_tol = 1e-10;
    int quad_max_panels = 1 << 14;

    double diagnostics_r0 = 0.25;  // radius cap for the envelope margin
    std::vector<double> snapshot_times;
    std::string output_dir = "out";
    bool write_svg = true;
    std::uint64_t seed = 1;

    QuadratureSpec quadrature() const {
        QuadratureSpec q;
        q.abs_tol = quad_abs_tol;
        q.rel_tol = quad_rel_tol;
        q.max_panels = quad_max_panels;
        return q;
    }
    ModelParams model() const { return {model_N1, disable_skyrme_term, dissipation}; }
    GaussianPulse pulse0() const { return {a0, rc0, sigma0}; }
    GaussianPulse pulse1() const { return {a1, rc1, sigma1}; }
};

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);

// Validation shared by the CLI: positivity requirements and the
// boundary-contamination guard R > r_c + t_end + 3 sigma.
void validate_config(const RunConfig& cfg);

}  // namespace skyrsim
