// Command-line front end: simulation runs with CSV/JSON/SVG artifacts,
// verification suites, and the inequality scans.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "skyrsim/config.hpp"
#include "skyrsim/io.hpp"
#include "skyrsim/verify.hpp"

namespace {

using namespace skyrsim;

constexpr double kPi = 3.14159265358979323846264338327950288;

int cmd_simulate(const std::string& config_path) {
    RunConfig cfg;
    try {
        cfg = load_config(config_path);
        validate_config(cfg);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    const RadialGrid grid = RadialGrid::make(cfg.grid_N, cfg.grid_R, 5);
    SimState state = make_initial_state(grid, cfg.model(), cfg.pulse0(), cfg.pulse1());
    const QuadratureSpec quad = cfg.quadrature();

    EvolutionConfig evo;
    evo.cfl = cfg.cfl;
    evo.t_end = cfg.t_end;
    evo.blowup_threshold = cfg.blowup_threshold;
    evo.record_every = cfg.record_every;
    const double dt = cfg.cfl * grid.h;

    std::ostringstream csv;
    csv << "t,E,G,l2_phi,l2_dtphi,h1_phi,coercivity,g1_margin,dt\n";
    std::vector<double> ts, Es, Gs;
    double E0 = 0.0, max_drift = 0.0, max_G = 0.0, max_sup_r2g = 0.0, max_g3_ratio = 0.0;
    double min_coercivity_margin = 0.0;
    bool first = true;

    std::vector<double> snap_times = cfg.snapshot_times;
    std::size_t next_snap = 0;
    std::vector<std::pair<double, std::string>> snapshots;

    std::vector<RecordSink> sinks;
    sinks.push_back([&](const SimState& s, int) {
        const DiagnosticsRecord d = compute_diagnostics(s, cfg.diagnostics_r0, quad);
        csv << format_double(d.t) << ',' << format_double(d.E) << ',' << format_double(d.G) << ','
            << format_double(d.l2_phi) << ',' << format_double(d.l2_dtphi) << ','
            << format_double(d.h1_phi) << ',' << format_double(d.coercivity) << ','
            << format_double(d.g1_margin) << ',' << format_double(dt) << '\n';
        ts.push_back(d.t);
        Es.push_back(d.E);
        Gs.push_back(d.G);
        if (first) {
            E0 = d.E;
            first = false;
        } else if (E0 > 0.0) {
            max_drift = std::max(max_drift, std::abs(d.E - E0) / E0);
        }
        max_G = std::max(max_G, d.G);
        max_sup_r2g = std::max(max_sup_r2g, d.sup_r2g);
        max_g3_ratio = std::max(max_g3_ratio, d.g3_ratio);
        const double h1_grad = std::sqrt(std::max(0.0, d.h1_phi * d.h1_phi - d.l2_phi * d.l2_phi));
        min_coercivity_margin =
            std::min(min_coercivity_margin, d.coercivity + 1e-8 * h1_grad * h1_grad);
        while (next_snap < snap_times.size() && s.t >= snap_times[next_snap] - 0.5 * dt) {
            const PhiSnapshot ps = build_phi_snapshot(s, quad);
            const CutoffPhi phi(s.model.N1);
            std::ostringstream sc;
            sc << "r,g,gt,f,Phi,Phi2\n";
            for (int j = 0; j < s.grid.N; ++j) {
                const double r = s.grid.r(j);
                sc << format_double(r) << ',' << format_double(s.g[j]) << ','
                   << format_double(s.gt[j]) << ',' << format_double(phi(r) + r * s.g[j]) << ','
                   << format_double(ps.phi[j]) << ',' << format_double(ps.phi2[j]) << '\n';
            }
            snapshots.emplace_back(s.t, sc.str());
            ++next_snap;
        }
    });

    RunOutcome outcome;
    try {
        outcome = run(std::move(state), evo, sinks);
    } catch (const std::exception& e) {
        std::cerr << "run error: " << e.what() << "\n";
        return 3;
    }

    namespace fs = std::filesystem;
    const fs::path dir(cfg.output_dir);
    atomic_write((dir / "timeseries.csv").string(), csv.str());
    for (const auto& [t, content] : snapshots) {
        std::ostringstream name;
        name << "snapshot_t" << format_double(t) << ".csv";
        atomic_write((dir / name.str()).string(), content);
    }

    nlohmann::json summary;
    summary["outcome"] = outcome.status == RunStatus::completed           ? "completed"
                         : outcome.status == RunStatus::blowup_flagged    ? "blowup_flagged"
                                                                          : "boundary_contaminated";
    summary["t_final"] = outcome.t;
    summary["steps"] = outcome.steps;
    if (std::isfinite(outcome.G))
        summary["G_final"] = outcome.G;
    else
        summary["G_final"] = "non-finite";
    summary["E0"] = E0;
    summary["max_energy_drift"] = max_drift;
    summary["max_G"] = max_G;
    summary["max_sup_r2g"] = max_sup_r2g;
    summary["max_g3_phi_ratio"] = max_g3_ratio;
    summary["min_coercivity_margin"] = min_coercivity_margin;
    atomic_write((dir / "summary.json").string(), summary.dump(2) + "\n");

    if (cfg.write_svg && !ts.empty()) {
        atomic_write((dir / "energy.svg").string(), svg_line_plot(ts, Es, "E(t)"));
        atomic_write((dir / "continuation.svg").string(), svg_line_plot(ts, Gs, "G(t)"));
    }

    if (outcome.status == RunStatus::blowup_flagged) {
        std::cerr << "blowup flagged at t = " << outcome.t << " (G = " << outcome.G << ")\n";
        return 3;
    }
    if (outcome.status == RunStatus::boundary_contaminated) {
        std::cerr << "boundary contamination at t = " << outcome.t << "\n";
        return 4;
    }
    std::cout << "completed t = " << outcome.t << ", max energy drift " << max_drift << "\n";
    return 0;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, const std::string& out_path) {
    VerificationReport rep;
    try {
        rep = run_suite(suite, seed);
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    std::cout << rep.table();
    if (!out_path.empty()) atomic_write(out_path, report_to_json(rep));
    if (!rep.all_pass()) {
        std::cerr << "verification failures:\n";
        for (const auto& c : rep.checks)
            if (!c.pass) std::cerr << "  " << c.name << " (" << c.eq_tag << "): value " << c.value
                                   << " vs tol " << c.tol << "\n";
        return 1;
    }
    return 0;
}

int cmd_scan(const std::string& target, double r_max, double beta_max, int resolution, double r0,
             const std::string& out_path) {
    nlohmann::json j;
    try {
        if (target == "lemma1") {
            if (resolution == 0) resolution = 256;
            const Lemma1Scan s = lemma1_scan(r_max, beta_max, resolution, 128);
            j["target"] = "lemma1";
            j["r0"] = s.r0;
            j["r1"] = s.r1;
            j["global_min"] = s.global_min;
            j["argmin_r"] = s.argmin_r;
            j["argmin_beta"] = s.argmin_beta;
            j["pure_sine_value"] = s.pure_sine_value;
            j["per_pi"] = s.per_pi;
            j["n_r"] = s.n_r;
            std::cout << "lemma1 scan: r0 = " << s.r0 << ", r1 = " << s.r1
                      << ", min = " << s.global_min << "\n";
        } else if (target == "corollary1") {
            if (resolution == 0) resolution = 512;
            if (r0 <= 0.0) r0 = lemma1_scan().r0;  // no prior value supplied: rescan
            const Corollary1Scan s = corollary1_scan(r0, 8.0 * kPi, resolution);
            j["target"] = "corollary1";
            j["r0"] = s.r0;
            j["min_margin"] = s.min_margin;
            j["argmin_r"] = s.argmin_r;
            j["argmin_z"] = s.argmin_z;
            j["resolution"] = s.resolution;
            std::cout << "corollary1 scan: r0 = " << s.r0 << ", min margin = " << s.min_margin << "\n";
        } else {
            std::cerr << "unknown scan target: " << target << "\n";
            return 2;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    if (!out_path.empty()) atomic_write(out_path, j.dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"radial Skyrme hedgehog simulator and verification harness"};
    app.require_subcommand(1);

    std::string config_path;
    auto* sim = app.add_subcommand("simulate", "evolve a configuration and write diagnostics");
    sim->add_option("--config", config_path, "path to run configuration")->required();

    std::string suite = "all";
    std::string verify_out;
    std::uint64_t seed = 1;
    auto* ver = app.add_subcommand("verify", "run a verification suite");
    ver->add_option("--suite", suite, "identities | inequalities | convergence | all");
    ver->add_option("--seed", seed, "seed for randomized sample draws");
    ver->add_option("--out", verify_out, "write report JSON to this path");

    std::string target;
    double r_max = 0.5, beta_max = 20.0 * kPi, scan_r0 = 0.0;
    int resolution = 0;  // 0 picks the target default (256/pi or 512 grid)
    std::string scan_out;
    auto* scan = app.add_subcommand("scan", "run an inequality scan");
    scan->add_option("target", target, "lemma1 | corollary1")->required();
    scan->add_option("--r-max", r_max, "largest radius scanned");
    scan->add_option("--beta-max", beta_max, "largest angle scanned");
    scan->add_option("--resolution", resolution, "samples per pi (lemma1) or grid size (corollary1)");
    scan->add_option("--r0", scan_r0, "radius cap from a prior lemma1 scan (corollary1 only)");
    scan->add_option("--out", scan_out, "write scan JSON to this path");

    CLI11_PARSE(app, argc, argv);

    if (sim->parsed()) return cmd_simulate(config_path);
    if (ver->parsed()) return cmd_verify(suite, seed, verify_out);
    if (scan->parsed()) return cmd_scan(target, r_max, beta_max, resolution, scan_r0, scan_out);
    return 2;
}
