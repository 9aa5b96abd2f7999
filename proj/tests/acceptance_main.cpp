// Acceptance suite: every release criterion evaluated at its stated
// tolerance, one pass/fail line each. Exit status 0 only if all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "skyrsim/config.hpp"
#include "skyrsim/io.hpp"
#include "skyrsim/verify.hpp"

using namespace skyrsim;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

int g_failures = 0;

void report(int idx, const std::string& what, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s  (%s)\n", pass ? "PASS" : "FAIL", idx, what.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double now_seconds() {
    using clock = std::chrono::steady_clock;
    static const clock::time_point t0 = clock::now();
    return std::chrono::duration<double>(clock::now() - t0).count();
}

struct RunSummary {
    RunStatus status = RunStatus::completed;
    double max_drift = 0.0;
    double max_G = 0.0;
    double min_coercivity_margin = 0.0;  // coercivity + 1e-8 |grad Phi|^2, must stay >= 0
    double E0 = 0.0;
};

RunSummary evolve_with_diagnostics(double a0, double sigma, int N1, bool disable_skyrme, int N,
                                   double R, double cfl, double t_end, int record_every) {
    const RadialGrid grid = RadialGrid::make(N, R, 5);
    ModelParams mp;
    mp.N1 = N1;
    mp.disable_skyrme_term = disable_skyrme;
    SimState state = make_initial_state(grid, mp, {a0, 0.0, sigma}, {0.0, 0.0, sigma});
    EvolutionConfig evo;
    evo.cfl = cfl;
    evo.t_end = t_end;
    evo.record_every = record_every;

    RunSummary sum;
    bool first = true;
    std::vector<RecordSink> sinks{[&](const SimState& s, int) {
        const DiagnosticsRecord d = compute_diagnostics(s, 0.25);
        if (first) {
            sum.E0 = d.E;
            first = false;
        } else if (sum.E0 > 0.0) {
            sum.max_drift = std::max(sum.max_drift, std::abs(d.E - sum.E0) / sum.E0);
        }
        sum.max_G = std::max(sum.max_G, d.G);
        const double grad2 = std::max(0.0, d.h1_phi * d.h1_phi - d.l2_phi * d.l2_phi);
        sum.min_coercivity_margin =
            std::min(sum.min_coercivity_margin, d.coercivity + 1e-8 * grad2);
    }};
    const RunOutcome out = run(std::move(state), evo, sinks);
    sum.status = out.status;
    sum.max_G = std::max(sum.max_G, out.G);
    return sum;
}

std::string fmt(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.4g", x);
    return buf;
}

}  // namespace

int main() {
    std::printf("acceptance suite\n================\n");

    // 1. single-period pure-sine integral equals 1/6
    {
        const double t0 = now_seconds();
        const double v = integrate([](double y) {
            const double s = std::sin(y);
            return s * (0.75 - s * s);
        }, 0.0, kPi);
        const double dt = now_seconds() - t0;
        const double err = std::abs(v - 1.0 / 6.0);
        report(1, "pure-sine weight integral equals 1/6 within 1e-12", err <= 1e-12 && dt < 1.0,
               "err=" + fmt(err) + ", " + fmt(dt) + " s");
    }

    // 2 + 3. weight-positivity scan
    Lemma1Scan l1;
    {
        const double t0 = now_seconds();
        l1 = lemma1_scan(0.5, 20.0 * kPi, 256, 128);
        const double dt = now_seconds() - t0;

        bool fe1_ok = l1.r1 > 0.0;
        for (int k = 1; k <= 8; ++k) {
            const double r = l1.r1 * k / 8.5;  // strictly below r1
            if (lemma1_F(r, kPi) < 1.0 / 12.0 - 1e-10) fe1_ok = false;
        }
        report(2, "one-period lower bound 1/12 holds below the detected r1", fe1_ok,
               "r1=" + fmt(l1.r1));
        const bool ok3 = l1.r0 > 0.0 && l1.global_min >= -1e-12 && dt < 60.0;
        report(3, "weight positivity scan min >= -1e-12 with r0 > 0", ok3,
               "r0=" + fmt(l1.r0) + ", min=" + fmt(l1.global_min) + ", " + fmt(dt) + " s");
    }

    // 4. nested envelope bound on a 512 x 512 grid
    {
        const Corollary1Scan c1 = corollary1_scan(l1.r0 > 0 ? l1.r0 : 0.5, 8.0 * kPi, 512);
        report(4, "envelope bound margin >= -1e-10 on the 512x512 scan", c1.min_margin >= -1e-10,
               "min=" + fmt(c1.min_margin) + " at r=" + fmt(c1.argmin_r) + ", z=" + fmt(c1.argmin_z));
    }

    // 5. Hardy sharpness family
    {
        const VerificationReport rep = check_hardy_family();
        std::string det;
        for (const auto& c : rep.checks)
            if (!c.details.empty()) det = c.details;
        report(5, "hardy ratio family: monotone toward 4/9, final > 0.42, bounded", rep.all_pass(), det);
    }

    // 6. identity suite at 1e-9
    {
        const double t0 = now_seconds();
        const VerificationReport rep = run_suite("identities", 1);
        const double dt = now_seconds() - t0;
        double worst = 0.0;
        for (const auto& c : rep.checks) worst = std::max(worst, c.value);
        report(6, "identity suite residuals <= 1e-9", rep.all_pass() && dt < 60.0,
               "worst=" + fmt(worst) + ", " + fmt(dt) + " s");
    }

    // 7. energy conservation of the default large-data run
    RunSummary default_run;
    {
        default_run = evolve_with_diagnostics(5.0, 2.0, 0, false, 4096, 64.0, 0.25, 10.0, 256);
        const bool ok = default_run.status == RunStatus::completed && default_run.max_drift <= 1e-6;
        report(7, "default run (a=5, N=4096, R=64, cfl=0.25, t=10) drift <= 1e-6", ok,
               "drift=" + fmt(default_run.max_drift) + ", maxG=" + fmt(default_run.max_G));
    }

    // 8. wave-equation residual self-convergence at order 2 over N = 1024, 2048, 4096
    {
        std::vector<double> l2s;
        for (int N : {1024, 2048, 4096}) {
            const RadialGrid grid = RadialGrid::make(N, 16.0, 5);
            ModelParams mp;
            SimState s = make_initial_state(grid, mp, {5.0, 0.0, 2.0}, {0.0, 0.0, 2.0});
            const double dt = 0.25 * grid.h;
            const long steps = std::lround(1.0 / dt);
            for (long k = 0; k < steps; ++k) s = step(s, dt);
            const SimState prev = step(s, -dt), next = step(s, dt);
            l2s.push_back(residual_phi_equation(prev, s, next).l2);
        }
        const double p1 = std::log2(l2s[0] / l2s[1]);
        const double p2 = std::log2(l2s[1] / l2s[2]);
        const double order = 0.5 * (p1 + p2);
        report(8, "phi-equation residual self-converges at order 2.0 +/- 0.3",
               std::abs(order - 2.0) <= 0.3,
               "order=" + fmt(order) + " (levels " + fmt(l2s[0]) + ", " + fmt(l2s[1]) + ", " +
                   fmt(l2s[2]) + ")");
    }

    // 9 + 10. large-data matrix to t = 50 plus the contrast fixture
    {
        bool all_complete = true;
        double min_coer = default_run.min_coercivity_margin;
        double max_G = 0.0;
        std::string det;
        for (int N1 : {0, 1}) {
            for (double a : {1.0, 5.0, 10.0}) {
                const RunSummary rs =
                    evolve_with_diagnostics(a, 2.0, N1, false, 4096, 64.0, 0.25, 50.0, 1024);
                if (rs.status != RunStatus::completed) {
                    all_complete = false;
                    det += "a=" + fmt(a) + ",N1=" + std::to_string(N1) + ":not-completed ";
                }
                min_coer = std::min(min_coer, rs.min_coercivity_margin);
                max_G = std::max(max_G, rs.max_G);
            }
        }
        report(9, "coercivity functional >= -1e-8 |grad Phi|^2 along every acceptance run",
               min_coer >= 0.0, "min margin=" + fmt(min_coer));

        // contrast fixture: quartic coupling disabled, collapse is permitted
        RunStatus contrast = RunStatus::completed;
        {
            const RadialGrid grid = RadialGrid::make(1024, 32.0, 5);
            ModelParams mp;
            mp.disable_skyrme_term = true;
            SimState s = make_initial_state(grid, mp, {5.0, 2.0, 0.5}, {0.0, 2.0, 0.5});
            EvolutionConfig evo;
            evo.t_end = 4.0;
            evo.record_every = 8;
            evo.blowup_threshold = 1e4;
            contrast = run(std::move(s), evo, {}).status;
        }
        const std::string cdet = contrast == RunStatus::blowup_flagged ? "contrast fixture flagged blowup"
                                                                       : "contrast fixture completed";
        report(10, "large-data matrix (a in {1,5,10}, N1 in {0,1}) completes to t=50", all_complete,
               "maxG=" + fmt(max_G) + "; " + cdet);
    }

    // 11. byte-identical reruns through the CLI
    {
        const char* bin = std::getenv("SKYRSIM_BIN");
        bool ok = false;
        std::string det = "SKYRSIM_BIN not set";
        if (bin) {
            const fs::path dir = fs::temp_directory_path() / "skyrsim_accept";
            fs::remove_all(dir);
            fs::create_directories(dir);
            const std::string base =
                "grid.N = 512\ngrid.R = 16\ndata.g0.a = 1.0\ndata.g0.sigma = 1.0\n"
                "evolution.t_end = 2.0\nevolution.record_every = 64\nseed = 42\n";
            for (int i = 1; i <= 2; ++i) {
                std::ofstream cfg(dir / ("r" + std::to_string(i) + ".cfg"));
                cfg << base << "output.dir = " << (dir / ("out" + std::to_string(i))).string() << "\n";
            }
            auto runit = [&](int i) {
                const std::string cmd = std::string(bin) + " simulate --config " +
                                        (dir / ("r" + std::to_string(i) + ".cfg")).string() +
                                        " > /dev/null 2>&1";
                return std::system(cmd.c_str());
            };
            if (runit(1) == 0 && runit(2) == 0) {
                auto slurp = [](const fs::path& p) {
                    std::ifstream in(p, std::ios::binary);
                    std::ostringstream ss;
                    ss << in.rdbuf();
                    return ss.str();
                };
                const std::string a = slurp(dir / "out1" / "timeseries.csv");
                const std::string b = slurp(dir / "out2" / "timeseries.csv");
                ok = !a.empty() && a == b;
                det = ok ? "timeseries.csv byte-identical" : "outputs differ";
            } else {
                det = "CLI run failed";
            }
            fs::remove_all(dir);
        }
        report(11, "repeated cmd_simulate yields byte-identical timeseries.csv", ok, det);
    }

    std::printf("================\n%s (%d failure%s)\n", g_failures == 0 ? "ALL PASS" : "FAILURES",
                g_failures, g_failures == 1 ? "" : "s");
    return g_failures == 0 ? 0 : 1;
}
