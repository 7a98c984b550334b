#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "nri/grid.hpp"

namespace nri {

// Full-precision decimal formatting: 17 significant digits round-trip any
// finite double back to the identical binary value.
inline std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct AnalysisOptions {
    double reference_x = 0.75, reference_y = 0.75;  // lambda units
    double isotropy_threshold = 0.05;

    bool operator==(const AnalysisOptions&) const = default;
};

// A parsed run configuration. Rates, detunings and Rabi frequencies are kept
// exactly as configured, in units of gamma_unit; SI values are built on
// demand so that emit/parse round-trips bit-exactly.
struct RunConfig {
    double gamma_unit = 1e8;  // rad/s

    // gamma_unit-scaled quantities
    double gamma3 = 0.0, gamma4 = 0.0, gamma12 = 0.0;
    double delta_p = 0.0, delta_c = 0.0, delta_s = 0.0;
    double omega_c0 = 0.0, omega_s0 = 0.0;
    std::vector<double> sweep_delta_p;  // empty -> {delta_p}

    // SI quantities
    double d23 = 0.0, mu12 = 0.0, density = 0.0;

    double lambda1 = 1.0, lambda2 = 1.0;  // lambda units
    GridSpec grid;
    AnalysisOptions analysis;
    SolverOptions solver;
    std::string out_dir = "out";

    bool operator==(const RunConfig&) const = default;

    SystemParams make_params(double delta_p_gamma) const {
        SystemParams p;
        p.gamma3 = gamma3 * gamma_unit;
        p.gamma4 = gamma4 * gamma_unit;
        p.gamma12 = gamma12 * gamma_unit;
        p.delta_p = delta_p_gamma * gamma_unit;
        p.delta_c = delta_c * gamma_unit;
        p.delta_s = delta_s * gamma_unit;
        p.d23 = d23;
        p.mu12 = mu12;
        p.density = density;
        p.gamma_unit = gamma_unit;
        return p;
    }
    SystemParams make_params() const { return make_params(delta_p); }

    StandingWaveConfig make_wave() const {
        return {omega_c0 * gamma_unit, omega_s0 * gamma_unit, lambda1, lambda2};
    }

    std::vector<double> sweep_gammas() const {
        return sweep_delta_p.empty() ? std::vector<double>{delta_p} : sweep_delta_p;
    }
    SweepSpec make_sweep() const {
        SweepSpec s{{}, make_params(), make_wave(), grid};
        for (double dg : sweep_gammas()) s.delta_ps.push_back(dg * gamma_unit);
        return s;
    }
};

namespace detail {

inline double parse_number(const std::string& key, const std::string& text) {
    const char* begin = text.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw ConfigError(key, "not a number: '" + text + "'");
    if (!std::isfinite(v)) throw ConfigError(key, "must be finite");
    return v;
}

inline int parse_int(const std::string& key, const std::string& text) {
    const double v = parse_number(key, text);
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v)
        throw ConfigError(key, "must be an integer: '" + text + "'");
    return i;
}

inline std::vector<double> parse_list(const std::string& key, const std::string& text) {
    std::vector<double> out;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) out.push_back(parse_number(key, tok));
    if (out.empty()) throw ConfigError(key, "empty list");
    return out;
}

}  // namespace detail

// Parses the key = value configuration text. '#' starts a comment; blank
// lines are ignored; unknown keys and repeated keys are rejected; frequencies
// are entered in units of gamma_unit.
inline RunConfig parse_config(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no),
                              "expected 'key = value'");
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("line " + std::to_string(line_no), "missing key");
        if (value.empty()) throw ConfigError(key, "missing value");
        if (!kv.emplace(key, value).second)
            throw ConfigError(key, "duplicate key");
    }

    RunConfig c;
    std::set<std::string> seen;
    auto take = [&](const char* key) -> const std::string* {
        auto it = kv.find(key);
        if (it == kv.end()) return nullptr;
        seen.insert(key);
        return &it->second;
    };
    auto number = [&](const char* key, double& slot) {
        if (const auto* v = take(key)) slot = detail::parse_number(key, *v);
    };
    auto integer = [&](const char* key, int& slot) {
        if (const auto* v = take(key)) slot = detail::parse_int(key, *v);
    };

    number("gamma_unit", c.gamma_unit);
    for (const char* key : {"gamma3", "gamma4", "gamma12", "delta_p", "delta_c",
                            "delta_s", "omega_c0", "omega_s0", "d23", "mu12",
                            "density"}) {
        if (!kv.count(key)) throw ConfigError(key, "required key missing");
    }
    number("gamma3", c.gamma3);
    number("gamma4", c.gamma4);
    number("gamma12", c.gamma12);
    number("delta_p", c.delta_p);
    number("delta_c", c.delta_c);
    number("delta_s", c.delta_s);
    number("omega_c0", c.omega_c0);
    number("omega_s0", c.omega_s0);
    number("d23", c.d23);
    number("mu12", c.mu12);
    number("density", c.density);
    if (const auto* v = take("sweep_delta_p"))
        c.sweep_delta_p = detail::parse_list("sweep_delta_p", *v);
    number("lambda1", c.lambda1);
    number("lambda2", c.lambda2);
    number("x_min", c.grid.x_min);
    number("x_max", c.grid.x_max);
    number("y_min", c.grid.y_min);
    number("y_max", c.grid.y_max);
    integer("nx", c.grid.nx);
    integer("ny", c.grid.ny);
    number("reference_x", c.analysis.reference_x);
    number("reference_y", c.analysis.reference_y);
    number("isotropy_threshold", c.analysis.isotropy_threshold);
    number("xi_floor_scale", c.solver.xi_floor_scale);
    number("condition_bound", c.solver.condition_bound);
    number("cm_pole_floor", c.solver.cm_pole_floor);
    number("cm_near_factor", c.solver.cm_near_factor);
    number("probe_scale", c.solver.probe_scale);
    if (const auto* v = take("out_dir")) c.out_dir = *v;

    for (const auto& [key, value] : kv) {
        (void)value;
        if (!seen.count(key)) throw ConfigError(key, "unknown key");
    }

    // Validate the assembled types so every embedded invariant holds on load.
    c.make_params().validate();
    c.make_wave().validate();
    c.grid.validate();
    for (double dg : c.sweep_gammas())
        if (!std::isfinite(dg * c.gamma_unit))
            throw ConfigError("sweep_delta_p", "must be finite");
    if (!(c.analysis.isotropy_threshold > 0.0))
        throw ConfigError("isotropy_threshold", "must be > 0");
    return c;
}

// Emits the configuration in the exact key set parse_config accepts;
// parse_config(emit_config(c)) == c.
inline std::string emit_config(const RunConfig& c) {
    std::ostringstream out;
    auto put = [&](const char* key, double v) {
        out << key << " = " << format_full(v) << "\n";
    };
    put("gamma_unit", c.gamma_unit);
    put("gamma3", c.gamma3);
    put("gamma4", c.gamma4);
    put("gamma12", c.gamma12);
    put("delta_p", c.delta_p);
    put("delta_c", c.delta_c);
    put("delta_s", c.delta_s);
    put("omega_c0", c.omega_c0);
    put("omega_s0", c.omega_s0);
    put("d23", c.d23);
    put("mu12", c.mu12);
    put("density", c.density);
    if (!c.sweep_delta_p.empty()) {
        out << "sweep_delta_p =";
        for (double v : c.sweep_delta_p) out << " " << format_full(v);
        out << "\n";
    }
    put("lambda1", c.lambda1);
    put("lambda2", c.lambda2);
    put("x_min", c.grid.x_min);
    put("x_max", c.grid.x_max);
    put("y_min", c.grid.y_min);
    put("y_max", c.grid.y_max);
    out << "nx = " << c.grid.nx << "\n";
    out << "ny = " << c.grid.ny << "\n";
    put("reference_x", c.analysis.reference_x);
    put("reference_y", c.analysis.reference_y);
    put("isotropy_threshold", c.analysis.isotropy_threshold);
    put("xi_floor_scale", c.solver.xi_floor_scale);
    put("condition_bound", c.solver.condition_bound);
    put("cm_pole_floor", c.solver.cm_pole_floor);
    put("cm_near_factor", c.solver.cm_near_factor);
    put("probe_scale", c.solver.probe_scale);
    out << "out_dir = " << c.out_dir << "\n";
    return out.str();
}

inline RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace nri
