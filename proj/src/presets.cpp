#include "asap/presets.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "asap/analysis.hpp"
#include "asap/packager.hpp"

namespace asap {

namespace {

// Fig-style step in processing cost: constant 70 ev/ms source, cost jumps
// 25x at mid-run.
std::vector<PresetRun> step_complexity(std::uint64_t seed) {
    Scenario sc;
    sc.name = "step-complexity";
    sc.source = ConstantSource{70000.0};
    sc.duration_s = 4.0;
    StepScheduleCost w;
    w.unit_s = 4e-5;
    w.phases = {{0.0, 1.0, 1}, {2.0, 25.0, 1}};
    sc.workload = w;
    sc.config.seed = seed;
    return {{"", sc}};
}

// n stepping 10, 50, 200, 500, 200, 50, 10 every 2 s, for linear, quadratic,
// and cubic complexity. Unit costs keep the dearest phase at 50 ms so the
// loop stays overflow-free at 20 ev/ms.
std::vector<PresetRun> complexity_sweep(std::uint64_t seed) {
    const double units[3] = {1e-4, 2e-7, 4e-10};
    std::vector<PresetRun> runs;
    for (int p = 1; p <= 3; ++p) {
        Scenario sc;
        sc.name = "complexity-sweep-p" + std::to_string(p);
        sc.source = ConstantSource{20000.0};
        sc.duration_s = 14.0;
        StepScheduleCost w;
        w.unit_s = units[p - 1];
        const double seq[7] = {10, 50, 200, 500, 200, 50, 10};
        for (int i = 0; i < 7; ++i) w.phases.push_back({2.0 * i, seq[i], p});
        sc.workload = w;
        sc.config.seed = seed;
        runs.push_back({"p" + std::to_string(p), sc});
    }
    return runs;
}

// Event rate ramping 500 -> 8000 ev/ms with constant cost; alpha = 1 keeps
// the rate extremes as true running extremes over the ramp.
std::vector<PresetRun> rate_ramp(std::uint64_t seed) {
    Scenario sc;
    sc.name = "rate-ramp";
    sc.source = RampSource{500000.0, 8000000.0};
    sc.duration_s = 3.0;
    StepScheduleCost w;
    w.unit_s = 1e-3;
    w.phases = {{0.0, 1.0, 1}};
    sc.workload = w;
    sc.config.alpha = 1.0;
    sc.config.seed = seed;
    return {{"", sc}};
}

// Cost oscillating across the whole feedback range.
std::vector<PresetRun> sinusoid_cost(std::uint64_t seed) {
    Scenario sc;
    sc.name = "sinusoid-cost";
    sc.source = ConstantSource{50000.0};
    sc.duration_s = 12.0;
    sc.workload = SinusoidCost{1e-6, 0.1, 4.0};
    sc.config.seed = seed;
    return {{"", sc}};
}

// Adaptive loop vs fixed-size and fixed-rate packaging under a per-package
// overhead that supersaturates 10-event packages.
std::vector<PresetRun> static_comparison(std::uint64_t seed) {
    Scenario base;
    base.source = ConstantSource{70000.0};
    base.duration_s = 4.0;
    base.workload = PowerLawCost{1e-3, 1e-6, 1};
    base.config.seed = seed;

    std::vector<PresetRun> runs;
    auto add = [&](const std::string& label, DeliveryPolicy policy) {
        PresetRun run{label, base};
        run.scenario.name = "static-comparison-" + label;
        run.scenario.policy = policy;
        runs.push_back(std::move(run));
    };
    add("asap", AsapPolicy{});
    for (std::size_t n : {10u, 500u, 1000u}) add("fixed_size_" + std::to_string(n), FixedSizePolicy{n});
    for (double f : {50.0, 100.0, 500.0})
        add("fixed_rate_" + std::to_string(static_cast<int>(f)), FixedRatePolicy{f});
    return runs;
}

}  // namespace

std::vector<std::string> preset_names() {
    return {"step-complexity", "complexity-sweep", "rate-ramp",
            "sinusoid-cost",   "static-comparison", "convergence-grid"};
}

bool is_grid_preset(const std::string& name) { return name == "convergence-grid"; }

std::vector<PresetRun> make_preset(const std::string& name, std::uint64_t seed) {
    if (name == "step-complexity") return step_complexity(seed);
    if (name == "complexity-sweep") return complexity_sweep(seed);
    if (name == "rate-ramp") return rate_ramp(seed);
    if (name == "sinusoid-cost") return sinusoid_cost(seed);
    if (name == "static-comparison") return static_comparison(seed);
    throw ScenarioError("unknown preset '" + name + "'");
}

std::string convergence_grid_csv(int points_per_axis) {
    if (points_per_axis < 1) throw std::invalid_argument("grid: need at least one point");
    PackagerParams params = PackagerParams::make(1, 1000, 1e-6, 0.1, 5.0);

    std::ostringstream os;
    os << "beta0,beta1,s_star\n";
    for (int i = 1; i <= points_per_axis; ++i) {
        for (int j = 1; j <= points_per_axis; ++j) {
            double beta0 = 0.1 * i / points_per_axis;
            double beta1 = 0.1 * j / points_per_axis;
            double s_star = analysis::fixed_point_bisect(params, PowerLawCost{beta0, beta1, 1});
            os << format_double(beta0) << ',' << format_double(beta1) << ','
               << format_double(s_star) << '\n';
        }
    }
    return os.str();
}

namespace {

std::string metrics_filename(const std::string& label) {
    return label.empty() ? "metrics.csv" : "metrics_" + label + ".csv";
}

}  // namespace

std::string run_to_files(const PresetRun& run, const std::string& out_dir,
                         const RunOutputOptions& opts) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);

    std::ofstream trace;
    std::function<void(const GammaSample&)> sink;
    if (opts.gamma_trace) {
        std::string name = run.label.empty() ? "gamma_trace.csv" : "gamma_trace_" + run.label + ".csv";
        trace.open(fs::path(out_dir) / name);
        if (!trace) throw std::runtime_error("cannot write gamma trace in " + out_dir);
        trace << "i,t_us,r_i,gamma_i,kept\n";
        std::size_t stride = std::max<std::size_t>(opts.gamma_trace_stride, 1);
        sink = [&trace, stride](const GammaSample& s) {
            if (s.index % stride != 0) return;
            trace << s.index << ',' << s.t_us << ',' << format_double(s.rate) << ','
                  << format_double(s.gamma) << ',' << (s.kept ? 1 : 0) << '\n';
        };
    }

    RunResult result = run_scenario(run.scenario, sink);
    write_metrics(result.metrics, (fs::path(out_dir) / metrics_filename(run.label)).string());
    return summary_text(run.scenario, result);
}

std::vector<std::string> execute_preset(const std::string& name, const std::string& out_dir,
                                        std::uint64_t seed, const RunOutputOptions& opts) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    std::vector<std::string> written;

    std::string summaries;
    if (is_grid_preset(name)) {
        std::string csv = convergence_grid_csv();
        fs::path grid = fs::path(out_dir) / "grid.csv";
        std::ofstream(grid) << csv;
        written.push_back(grid.string());
        summaries = "scenario: convergence-grid\ngrid: 10x10 over beta0, beta1 in (0, 0.1]\n";
    } else {
        for (const PresetRun& run : make_preset(name, seed)) {
            summaries += run_to_files(run, out_dir, opts);
            summaries += '\n';
            written.push_back((fs::path(out_dir) / metrics_filename(run.label)).string());
        }
    }

    fs::path summary = fs::path(out_dir) / "summary.txt";
    std::ofstream(summary) << summaries;
    written.push_back(summary.string());
    return written;
}

}  // namespace asap
