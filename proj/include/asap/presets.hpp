#pragma once

#include <string>
#include <vector>

#include "asap/pipeline.hpp"

namespace asap {

// Canned experiment shapes: a step in processing cost, complexity sweeps,
// an event-rate ramp, a sinusoidal cost, and the static-packaging
// comparison. Each is a fully seeded, reproducible set of scenario runs.
struct PresetRun {
    std::string label;  // file suffix, e.g. "p2" or "fixed_size_10"
    Scenario scenario;
};

std::vector<std::string> preset_names();

// Scenario-backed presets; throws ScenarioError for unknown names or for
// convergence-grid (which has no scenarios, see convergence_grid_csv).
std::vector<PresetRun> make_preset(const std::string& name, std::uint64_t seed);

bool is_grid_preset(const std::string& name);

// Fixed-point package size over a grid of affine cost parameters,
// as CSV `beta0,beta1,s_star`.
std::string convergence_grid_csv(int points_per_axis = 10);

struct RunOutputOptions {
    bool gamma_trace = false;
    std::size_t gamma_trace_stride = 1;  // write every Nth sample
};

// Runs one scenario and writes metrics_<label>.csv (plus the gamma trace
// when enabled) into out_dir; returns the summary block for summary.txt.
std::string run_to_files(const PresetRun& run, const std::string& out_dir,
                         const RunOutputOptions& opts = {});

// Runs a whole preset: per-run metrics files, one summary.txt, grid.csv for
// the convergence preset. Returns the paths written.
std::vector<std::string> execute_preset(const std::string& name, const std::string& out_dir,
                                        std::uint64_t seed, const RunOutputOptions& opts = {});

}  // namespace asap
