#include "nlslab/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "nlslab/errors.hpp"

namespace nlslab {
namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        double x = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        if (!std::isfinite(x)) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("invalid value for '" + key + "': " + v);
    }
}

long long parse_int(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        long long x = std::stoll(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("invalid value for '" + key + "': " + v);
    }
}

} // namespace

void validate(const ExperimentConfig& cfg) {
    if (cfg.grid.n < 16 || (cfg.grid.n & (cfg.grid.n - 1)) != 0)
        throw ConfigError("grid.n must be a power of two >= 16, got " +
                          std::to_string(cfg.grid.n));
    if (!(cfg.grid.L > 0.0)) throw ConfigError("grid.L must be positive");
    if (!(cfg.time.dt > 0.0)) throw ConfigError("time.dt must be positive");
    if (!(cfg.time.T > 0.0)) throw ConfigError("time.T must be positive");
    if (cfg.time.store_every < 0.0) throw ConfigError("time.store_every must be >= 0");
    if (!(cfg.soliton.omega0 > 0.0)) throw ConfigError("soliton.omega0 must be positive");
    if (cfg.perturbation.kind != "gaussian" && cfg.perturbation.kind != "none")
        throw ConfigError("perturbation.kind must be 'gaussian' or 'none', got '" +
                          cfg.perturbation.kind + "'");
    if (cfg.perturbation.kind == "gaussian" && !(cfg.perturbation.width > 0.0))
        throw ConfigError("perturbation.width must be positive");
    if (!(cfg.frozen.xi_max > 0.0)) throw ConfigError("frozen.xi_max must be positive");
    if (cfg.frozen.n_xi < 3 || cfg.frozen.n_xi % 2 == 0)
        throw ConfigError("frozen.n_xi must be odd and at least 3, got " +
                          std::to_string(cfg.frozen.n_xi));
    if (!(cfg.tolerances.newton > 0.0)) throw ConfigError("tolerances.newton must be positive");
    if (!(cfg.tolerances.boundary_monitor > 0.0))
        throw ConfigError("tolerances.boundary_monitor must be positive");
}

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");

        if (key == "grid.n") cfg.grid.n = static_cast<int>(parse_int(key, val));
        else if (key == "grid.L") cfg.grid.L = parse_double(key, val);
        else if (key == "time.dt") cfg.time.dt = parse_double(key, val);
        else if (key == "time.T") cfg.time.T = parse_double(key, val);
        else if (key == "time.store_every") cfg.time.store_every = parse_double(key, val);
        else if (key == "soliton.omega0") cfg.soliton.omega0 = parse_double(key, val);
        else if (key == "soliton.gamma0") cfg.soliton.gamma0 = parse_double(key, val);
        else if (key == "soliton.p0") cfg.soliton.p0 = parse_double(key, val);
        else if (key == "soliton.sigma0") cfg.soliton.sigma0 = parse_double(key, val);
        else if (key == "perturbation.kind") cfg.perturbation.kind = val;
        else if (key == "perturbation.amplitude") cfg.perturbation.amplitude = parse_double(key, val);
        else if (key == "perturbation.width") cfg.perturbation.width = parse_double(key, val);
        else if (key == "perturbation.center") cfg.perturbation.center = parse_double(key, val);
        else if (key == "perturbation.phase") cfg.perturbation.phase = parse_double(key, val);
        else if (key == "frozen.xi_max") cfg.frozen.xi_max = parse_double(key, val);
        else if (key == "frozen.n_xi") cfg.frozen.n_xi = static_cast<int>(parse_int(key, val));
        else if (key == "tolerances.newton") cfg.tolerances.newton = parse_double(key, val);
        else if (key == "tolerances.boundary_monitor")
            cfg.tolerances.boundary_monitor = parse_double(key, val);
        else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_int(key, val));
        else throw ConfigError("unknown key '" + key + "'");
    }
    validate(cfg);
    return cfg;
}

ExperimentConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

} // namespace nlslab
