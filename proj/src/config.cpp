#include "skyrsim/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace skyrsim {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (...) {
        throw ConfigError("config: bad numeric value for " + key + ": '" + v + "'");
    }
}

int to_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const long x = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return static_cast<int>(x);
    } catch (...) {
        throw ConfigError("config: bad integer value for " + key + ": '" + v + "'");
    }
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError("config: bad boolean value for " + key + ": '" + v + "'");
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: line " + std::to_string(lineno) + " is not key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key == "grid.N") cfg.grid_N = to_int(key, val);
        else if (key == "grid.R") cfg.grid_R = to_double(key, val);
        else if (key == "model.N1") cfg.model_N1 = to_int(key, val);
        else if (key == "model.disable_skyrme_term") cfg.disable_skyrme_term = to_bool(key, val);
        else if (key == "model.dissipation") cfg.dissipation = to_double(key, val);
        else if (key == "data.g0.a") cfg.a0 = to_double(key, val);
        else if (key == "data.g0.r_c") cfg.rc0 = to_double(key, val);
        else if (key == "data.g0.sigma") cfg.sigma0 = to_double(key, val);
        else if (key == "data.g1.a") cfg.a1 = to_double(key, val);
        else if (key == "data.g1.r_c") cfg.rc1 = to_double(key, val);
        else if (key == "data.g1.sigma") cfg.sigma1 = to_double(key, val);
        else if (key == "evolution.cfl") cfg.cfl = to_double(key, val);
        else if (key == "evolution.t_end") cfg.t_end = to_double(key, val);
        else if (key == "evolution.record_every") cfg.record_every = to_int(key, val);
        else if (key == "evolution.blowup_threshold") cfg.blowup_threshold = to_double(key, val);
        else if (key == "quadrature.abs_tol") cfg.quad_abs_tol = to_double(key, val);
        else if (key == "quadrature.rel_tol") cfg.quad_rel_tol = to_double(key, val);
        else if (key == "quadrature.max_panels") cfg.quad_max_panels = to_int(key, val);
        else if (key == "diagnostics.r0") cfg.diagnostics_r0 = to_double(key, val);
        else if (key == "output.dir") cfg.output_dir = val;
        else if (key == "output.svg") cfg.write_svg = to_bool(key, val);
        else if (key == "output.snapshot_times") {
            cfg.snapshot_times.clear();
            std::istringstream ls(val);
            std::string tok;
            while (std::getline(ls, tok, ',')) {
                tok = trim(tok);
                if (!tok.empty()) cfg.snapshot_times.push_back(to_double(key, tok));
            }
        } else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(to_int(key, val));
        else throw ConfigError("config: unknown key '" + key + "' (line " + std::to_string(lineno) + ")");
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("config: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

void validate_config(const RunConfig& cfg) {
    if (cfg.grid_N < 4) throw ConfigError("config: grid.N must be >= 4");
    if (!(cfg.grid_R > 0)) throw ConfigError("config: grid.R must be positive");
    if (!(cfg.cfl > 0 && cfg.cfl <= 0.5)) throw ConfigError("config: evolution.cfl must be in (0, 0.5]");
    if (!(cfg.t_end > 0)) throw ConfigError("config: evolution.t_end must be positive");
    if (cfg.record_every < 1) throw ConfigError("config: evolution.record_every must be >= 1");
    if (cfg.model_N1 < 0) throw ConfigError("config: model.N1 must be >= 0");
    if (!(cfg.sigma0 > 0) || !(cfg.sigma1 > 0)) throw ConfigError("config: pulse sigma must be positive");
    if (cfg.rc0 < 0 || cfg.rc1 < 0) throw ConfigError("config: pulse r_c must be >= 0");
    const double reach = std::max(cfg.rc0 + 3.0 * cfg.sigma0, cfg.rc1 + 3.0 * cfg.sigma1);
    if (!(cfg.grid_R > reach + cfg.t_end))
        throw ConfigError("config: grid.R must exceed r_c + 3 sigma + t_end (boundary guard)");
}

}  // namespace skyrsim
