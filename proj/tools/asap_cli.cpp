// Command-line harness: scenario execution, experiment presets, the
// convergence grid, and calibration printout. All outputs are plain CSV or
// text; plotting is left to external tools.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "asap/analysis.hpp"
#include "asap/packager.hpp"
#include "asap/presets.hpp"
#include "asap/scenario_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitScenario = 3;
constexpr int kExitRuntime = 4;

int run_command(const std::string& scenario_path, const std::string& out_dir,
                std::optional<std::uint64_t> seed, bool gamma_trace, std::size_t stride) {
    asap::PresetRun run{"", asap::load_scenario(scenario_path)};
    if (seed) run.scenario.config.seed = *seed;

    asap::RunOutputOptions opts;
    opts.gamma_trace = gamma_trace;
    opts.gamma_trace_stride = stride;

    std::string summary = asap::run_to_files(run, out_dir, opts);
    std::ofstream(std::filesystem::path(out_dir) / "summary.txt") << summary;
    std::cout << summary;
    return kExitOk;
}

int preset_command(const std::string& name, const std::string& out_dir, std::uint64_t seed,
                   bool gamma_trace, std::size_t stride) {
    asap::RunOutputOptions opts;
    opts.gamma_trace = gamma_trace;
    opts.gamma_trace_stride = stride;
    for (const std::string& path : asap::execute_preset(name, out_dir, seed, opts))
        std::cout << "wrote " << path << "\n";
    return kExitOk;
}

int converge_command(const std::string& out_file, int points) {
    std::ofstream out(out_file);
    if (!out) throw std::runtime_error("cannot write '" + out_file + "'");
    out << asap::convergence_grid_csv(points);
    std::cout << "wrote " << out_file << "\n";
    return kExitOk;
}

int calibrate_command(const asap::AsapConfig& cfg) {
    cfg.validate();
    asap::PackagerParams p = asap::PackagerParams::from_config(cfg);
    std::printf("A = %.10g\n", p.A);
    std::printf("B = %.10g\n", p.B);
    std::printf("t_flex = %.10g\n", asap::inflection_point(p.kappa));
    std::printf("t_flex2 = %.10g\n", asap::inflection_point_2(p.kappa));
    std::printf("s(t_min) = %d\n", asap::target_size(p.t_min, p));
    std::printf("s(t_max) = %d\n", asap::target_size(p.t_max, p));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"adaptive event-stream handling harness"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "execute a scenario file");
    std::string scenario_path, out_dir = "out";
    std::optional<std::uint64_t> run_seed;
    bool gamma_trace = false;
    std::size_t stride = 1;
    run->add_option("--scenario", scenario_path, "scenario file")->required();
    run->add_option("--out", out_dir, "output directory");
    run->add_option("--seed", run_seed, "override the scenario seed");
    run->add_flag("--gamma-trace", gamma_trace, "write the per-event gamma trace CSV");
    run->add_option("--gamma-trace-stride", stride, "keep every Nth trace sample");

    // preset
    auto* preset = app.add_subcommand("preset", "execute a named preset");
    std::string preset_name;
    std::string preset_out = "out";
    std::uint64_t preset_seed = 1;
    bool preset_trace = false;
    std::size_t preset_stride = 1;
    std::string names;
    for (const auto& n : asap::preset_names()) names += (names.empty() ? "" : ", ") + n;
    preset->add_option("name", preset_name, "one of: " + names)->required();
    preset->add_option("--out", preset_out, "output directory");
    preset->add_option("--seed", preset_seed, "run seed");
    preset->add_flag("--gamma-trace", preset_trace, "write the per-event gamma trace CSV");
    preset->add_option("--gamma-trace-stride", preset_stride, "keep every Nth trace sample");

    // converge
    auto* converge = app.add_subcommand("converge", "fixed-point grid over affine costs");
    bool grid = false;
    std::string grid_out = "grid.csv";
    int grid_points = 10;
    converge->add_flag("--grid", grid, "emit the beta0 x beta1 grid");
    converge->add_option("--out", grid_out, "output CSV file");
    converge->add_option("--points", grid_points, "points per axis");

    // calibrate
    auto* calibrate = app.add_subcommand("calibrate", "print sizing-law calibration");
    bool print = false;
    asap::AsapConfig cfg;
    calibrate->add_flag("--print", print, "print A, B and the inflection points");
    calibrate->add_option("--kappa", cfg.kappa, "curvature parameter");
    calibrate->add_option("--s-min", cfg.s_min, "minimum package size");
    calibrate->add_option("--s-max", cfg.s_max, "maximum package size");
    calibrate->add_option("--t-min", cfg.t_min, "lower processing-time bound, s");
    calibrate->add_option("--t-max", cfg.t_max, "upper processing-time bound, s");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (run->parsed()) return run_command(scenario_path, out_dir, run_seed, gamma_trace, stride);
        if (preset->parsed())
            return preset_command(preset_name, preset_out, preset_seed, preset_trace, preset_stride);
        if (converge->parsed()) return converge_command(grid_out, grid_points);
        if (calibrate->parsed()) return calibrate_command(cfg);
    } catch (const asap::ScenarioError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitScenario;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitUsage;
}
