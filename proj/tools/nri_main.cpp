// Command-line front end: point / map / sweep / contours / check.
//
// Exit codes: 0 success, 2 configuration error, 3 computation error,
// 4 no enclosing contour, 5 oracle-equivalence discrepancies.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "nri/check.hpp"
#include "nri/io.hpp"

namespace fs = std::filesystem;
using nri::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitComputation = 3;
constexpr int kExitNoContour = 4;
constexpr int kExitDiscrepancy = 5;

struct CommonArgs {
    std::string config_path;
    std::string out_dir;       // overrides config when set
    double delta_p_gamma = 0;  // overrides config when set
    bool has_delta_p = false;
    unsigned threads = 0;
};

nri::RunConfig load_config(const CommonArgs& args) {
    std::string path = args.config_path;
    if (path.empty()) {
        if (const char* env = std::getenv("NRI_CONFIG")) path = env;
    }
    if (path.empty())
        throw nri::ConfigError("config",
                               "no --config given and NRI_CONFIG is not set");
    nri::RunConfig c = nri::load_config_file(path);
    if (!args.out_dir.empty()) c.out_dir = args.out_dir;
    if (args.has_delta_p) c.delta_p = args.delta_p_gamma;
    return c;
}

void warn_if_probe_strong(const nri::RunConfig& c) {
    const nri::SystemParams p = c.make_params();
    const nri::ProbeDrive probe = nri::probe_from_electric(
        p, nri::complex{c.solver.probe_scale * p.gamma_unit});
    if (!nri::probe_is_weak(p, probe))
        std::cerr << "warning: reference probe |omega_pE| is not small against "
                     "gamma3; weak-probe results may be inaccurate\n";
}

fs::path prepare_out_dir(const nri::RunConfig& c) {
    fs::path dir(c.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw nri::ConfigError("out_dir",
                               "cannot create '" + dir.string() + "': " + ec.message());
    return dir;
}

int cmd_point(const CommonArgs& args, double x, double y) {
    const nri::RunConfig config = load_config(args);
    warn_if_probe_strong(config);
    const nri::SystemParams params = config.make_params();
    const nri::LocalDrive drive = nri::local_rabi(config.make_wave(), x, y);

    json out{
        {"x_lambda", x},
        {"y_lambda", y},
        {"delta_p_gamma", config.delta_p},
        {"version", nri::version},
        {"branch_rule", nri::branch_rule_statement},
    };
    try {
        const nri::Polarizabilities g =
            nri::polarizabilities(params, drive, config.solver);
        const nri::MediumSample s =
            nri::medium_sample(params, drive, config.solver);
        out["gamma_e"] = nri::complex_json(g.gamma_e);
        out["gamma_m"] = nri::complex_json(g.gamma_m);
        out["eps_r"] = nri::complex_json(s.eps_r);
        out["mu_r"] = nri::complex_json(s.mu_r);
        out["n"] = nri::complex_json(s.n);
        json flags = json::array();
        if (s.flags & nri::FlagDoubleNegative) flags.push_back("DoubleNegative");
        if (s.flags & nri::FlagNearCMPole) flags.push_back("NearCMPole");
        if (s.flags & nri::FlagBranchAmbiguous) flags.push_back("BranchAmbiguous");
        out["flags"] = flags;
    } catch (const nri::Error& e) {
        out["error"] = nri::error_kind_name(e.kind());
        out["message"] = e.what();
        std::cout << out.dump(2) << "\n";
        return kExitComputation;
    }
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

void write_map_outputs(const nri::FieldMap& map, const fs::path& dir,
                       json& sidecar_entry) {
    const std::string tag =
        nri::delta_p_tag(map.params.delta_p / map.params.gamma_unit);
    const fs::path csv_path = dir / ("map_dp" + tag + ".csv");
    nri::write_file(csv_path, nri::map_csv(map));
    sidecar_entry = nri::map_summary_json(map);
    sidecar_entry["csv"] = csv_path.filename().string();
}

int cmd_map(const CommonArgs& args) {
    const nri::RunConfig config = load_config(args);
    warn_if_probe_strong(config);
    const fs::path dir = prepare_out_dir(config);
    const nri::FieldMap map =
        nri::evaluate_map(config.make_params(), config.make_wave(), config.grid,
                          config.solver, args.threads);
    json entry;
    write_map_outputs(map, dir, entry);
    json sidecar = nri::provenance_json(config);
    sidecar["command"] = "map";
    sidecar["map"] = entry;
    const std::string tag =
        nri::delta_p_tag(map.params.delta_p / map.params.gamma_unit);
    nri::write_file(dir / ("map_dp" + tag + ".json"), sidecar.dump(2) + "\n");
    std::cout << (dir / ("map_dp" + tag + ".csv")).string() << "\n";
    return kExitOk;
}

int cmd_sweep(const CommonArgs& args) {
    const nri::RunConfig config = load_config(args);
    warn_if_probe_strong(config);
    const fs::path dir = prepare_out_dir(config);
    const std::vector<nri::FieldMap> maps =
        nri::sweep(config.make_sweep(), config.solver, args.threads);
    json entries = json::array();
    for (const auto& map : maps) {
        json entry;
        write_map_outputs(map, dir, entry);
        entries.push_back(entry);
        std::cout << (dir / entry["csv"].get<std::string>()).string() << "\n";
    }
    json sidecar = nri::provenance_json(config);
    sidecar["command"] = "sweep";
    sidecar["maps"] = entries;
    nri::write_file(dir / "sweep.json", sidecar.dump(2) + "\n");
    return kExitOk;
}

int cmd_contours(const CommonArgs& args, double level) {
    const nri::RunConfig config = load_config(args);
    warn_if_probe_strong(config);
    const fs::path dir = prepare_out_dir(config);
    const nri::FieldMap map =
        nri::evaluate_map(config.make_params(), config.make_wave(), config.grid,
                          config.solver, args.threads);
    const auto contours = nri::extract_contours(map, level);
    const nri::RegionMetrics metrics = nri::region_metrics(
        map, config.analysis.reference_x, config.analysis.reference_y);

    const std::string tag = nri::delta_p_tag(config.delta_p);
    const std::string lev = nri::delta_p_tag(level);
    nri::write_file(dir / ("contours_dp" + tag + "_lev" + lev + ".csv"),
                    nri::contours_csv(contours));

    json analysis = nri::provenance_json(config);
    analysis["command"] = "contours";
    analysis["level"] = level;
    analysis["reference"] = {config.analysis.reference_x,
                             config.analysis.reference_y};
    analysis["contours"] = contours.size();
    std::size_t closed = 0;
    for (const auto& c : contours) closed += c.closed ? 1 : 0;
    analysis["closed_contours"] = closed;
    analysis["region"] = {
        {"double_negative_fraction", metrics.double_negative_fraction},
        {"min_re_n", metrics.min_re_n},
        {"argmin", {metrics.argmin_x, metrics.argmin_y}},
        {"n_at_reference", nri::complex_json(metrics.n_at_reference)},
    };

    int exit_code = kExitOk;
    try {
        const nri::ContourPolyline& inner = nri::innermost_contour(
            contours, config.analysis.reference_x, config.analysis.reference_y);
        const nri::CircleFitResult fit = nri::fit_circle(inner);
        analysis["innermost"] = {
            {"points", inner.points.size()},
            {"area", nri::polygon_area(inner)},
        };
        analysis["fit"] = {
            {"center_x", fit.center_x},   {"center_y", fit.center_y},
            {"radius", fit.radius},       {"rms_residual", fit.rms_residual},
            {"isotropy", fit.isotropy},
        };
        analysis["isotropic"] =
            fit.isotropy <= config.analysis.isotropy_threshold;
    } catch (const nri::NoEnclosingContourError& e) {
        analysis["fit"] = nullptr;
        analysis["error"] = nri::error_kind_name(e.kind());
        exit_code = kExitNoContour;
    }
    nri::write_file(dir / ("analysis_dp" + tag + "_lev" + lev + ".json"),
                    analysis.dump(2) + "\n");
    std::cout << analysis.dump(2) << "\n";
    return exit_code;
}

int cmd_check(const CommonArgs& args, int draws, std::uint64_t seed) {
    const nri::RunConfig config = load_config(args);
    const nri::CheckReport report = nri::run_check(
        draws, seed, config.make_params(), 1e-9, config.solver);
    json out{
        {"draws", report.draws},
        {"passed", report.passed},
        {"near_singular_skips", report.near_singular_skips},
        {"tolerance", report.tolerance},
        {"seed", seed},
    };
    json records = json::array();
    for (const auto& d : report.discrepancies) {
        records.push_back({
            {"quantity", d.quantity},
            {"closed_value", nri::complex_json(d.closed_value)},
            {"solve_value", nri::complex_json(d.solve_value)},
            {"rel_diff", d.rel_diff},
            {"gamma3", d.params.gamma3},
            {"gamma4", d.params.gamma4},
            {"gamma12", d.params.gamma12},
            {"delta_p", d.params.delta_p},
            {"delta_c", d.params.delta_c},
            {"delta_s", d.params.delta_s},
            {"omega_c", d.drive.omega_c.real()},
            {"omega_s", d.drive.omega_s.real()},
        });
    }
    out["discrepancies"] = records;
    std::cout << out.dump(2) << "\n";
    return report.discrepancies.empty() ? kExitOk : kExitDiscrepancy;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"2-D electromagnetic response of a standing-wave driven "
                 "four-level vapor"};
    app.require_subcommand(1);

    CommonArgs common;
    double x = 0.75, y = 0.75, level = 0.0;
    int draws = 1000;
    std::uint64_t seed = 1;

    auto add_common = [&](CLI::App* sub, bool with_threads = true) {
        sub->add_option("--config", common.config_path,
                        "configuration file (default: $NRI_CONFIG)");
        sub->add_option("--out", common.out_dir, "output directory override");
        auto* dp = sub->add_option("--delta-p", common.delta_p_gamma,
                                   "probe detuning in gamma units");
        dp->each([&](const std::string&) { common.has_delta_p = true; });
        if (with_threads)
            sub->add_option("--threads", common.threads,
                            "worker threads (0 = hardware)");
    };

    CLI::App* point = app.add_subcommand("point", "response at one (x, y)");
    add_common(point, false);
    point->add_option("--x", x, "x in lambda units");
    point->add_option("--y", y, "y in lambda units");

    CLI::App* map_cmd = app.add_subcommand("map", "field map CSV at one detuning");
    add_common(map_cmd);

    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "field maps over the configured detunings");
    add_common(sweep_cmd);

    CLI::App* contours_cmd =
        app.add_subcommand("contours", "iso-contours of Re{n} plus circle fit");
    add_common(contours_cmd);
    contours_cmd->add_option("--level", level, "contour level of Re{n}")
        ->required();

    CLI::App* check_cmd = app.add_subcommand(
        "check", "randomized closed-form vs linear-solve equivalence sweep");
    add_common(check_cmd, false);
    check_cmd->add_option("--draws", draws, "number of random draws");
    check_cmd->add_option("--seed", seed, "RNG seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (point->parsed()) return cmd_point(common, x, y);
        if (map_cmd->parsed()) return cmd_map(common);
        if (sweep_cmd->parsed()) return cmd_sweep(common);
        if (contours_cmd->parsed()) return cmd_contours(common, level);
        if (check_cmd->parsed()) return cmd_check(common, draws, seed);
    } catch (const nri::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const nri::Error& e) {
        std::cerr << "error [" << nri::error_kind_name(e.kind()) << "]: "
                  << e.what() << "\n";
        return kExitComputation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitComputation;
    }
    return kExitConfig;
}
