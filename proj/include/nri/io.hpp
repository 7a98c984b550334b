#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "nri/analysis.hpp"
#include "nri/config.hpp"
#include "nri/version.hpp"

namespace nri {

using json = nlohmann::json;

inline std::string flags_to_string(const GridSample& cell) {
    if (cell.error != ErrorKind::None)
        return std::string("ERR:") + error_kind_name(cell.error);
    std::string s;
    auto append = [&](const char* tok) {
        if (!s.empty()) s += '|';
        s += tok;
    };
    if (cell.medium.flags & FlagDoubleNegative) append("DN");
    if (cell.medium.flags & FlagNearCMPole) append("NCP");
    if (cell.medium.flags & FlagBranchAmbiguous) append("BA");
    return s;
}

// Map CSV, row-major grid order (x index outer). Numbers are emitted at full
// precision so the files are byte-stable and re-parse to identical doubles.
inline std::string map_csv(const FieldMap& map) {
    std::string out = "x_lambda,y_lambda,re_eps,im_eps,re_mu,im_mu,re_n,im_n,flags\n";
    const GridSpec& g = map.grid;
    for (int i = 0; i < g.nx; ++i) {
        for (int j = 0; j < g.ny; ++j) {
            const GridSample& c = map.at(i, j);
            out += format_full(g.x(i));
            out += ',';
            out += format_full(g.y(j));
            for (double v : {c.medium.eps_r.real(), c.medium.eps_r.imag(),
                             c.medium.mu_r.real(), c.medium.mu_r.imag(),
                             c.medium.n.real(), c.medium.n.imag()}) {
                out += ',';
                out += format_full(v);
            }
            out += ',';
            out += flags_to_string(c);
            out += '\n';
        }
    }
    return out;
}

// Contour CSV: one row per vertex, polylines in extraction order.
inline std::string contours_csv(const std::vector<ContourPolyline>& contours) {
    std::string out = "contour_id,vertex_id,x_lambda,y_lambda\n";
    for (std::size_t c = 0; c < contours.size(); ++c) {
        for (std::size_t v = 0; v < contours[c].points.size(); ++v) {
            out += std::to_string(c);
            out += ',';
            out += std::to_string(v);
            out += ',';
            out += format_full(contours[c].points[v][0]);
            out += ',';
            out += format_full(contours[c].points[v][1]);
            out += '\n';
        }
    }
    return out;
}

inline json complex_json(complex z) {
    return json{{"re", z.real()}, {"im", z.imag()}};
}

inline json provenance_json(const RunConfig& config) {
    return json{
        {"version", version},
        {"branch_rule", branch_rule_statement},
        {"config", emit_config(config)},
    };
}

inline json map_summary_json(const FieldMap& map) {
    std::size_t error_cells = 0;
    for (const auto& c : map.samples)
        if (c.error != ErrorKind::None) ++error_cells;
    return json{
        {"delta_p_gamma", map.params.delta_p / map.params.gamma_unit},
        {"nx", map.grid.nx},
        {"ny", map.grid.ny},
        {"x_min", map.grid.x_min},
        {"x_max", map.grid.x_max},
        {"y_min", map.grid.y_min},
        {"y_max", map.grid.y_max},
        {"cells", map.samples.size()},
        {"error_cells", error_cells},
    };
}

// Writes the whole payload, removing any partial file if the write fails.
inline void write_file(const std::filesystem::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("output", "cannot open '" + path.string() + "'");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
        out.close();
        std::error_code ec;
        std::filesystem::remove(path, ec);
        throw ConfigError("output", "write failed for '" + path.string() + "'");
    }
}

// Detuning tag used in output filenames: minimal digits, always at least one
// decimal (map_dp5.0.csv, map_dp4.7.csv).
inline std::string delta_p_tag(double delta_p_gamma) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%g", delta_p_gamma);
    std::string s = buf;
    if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
        s.find("inf") == std::string::npos && s.find("nan") == std::string::npos)
        s += ".0";
    return s;
}

}  // namespace nri
