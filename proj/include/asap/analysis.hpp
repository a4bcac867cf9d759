#pragma once

#include <optional>
#include <vector>

#include "asap/packager.hpp"
#include "asap/workload.hpp"

namespace asap::analysis {

enum class SequenceClass { constant, strictly_increasing, strictly_decreasing, mixed };

struct IterationTrace {
    std::vector<double> s;  // real-valued iterates, s[0] = s0
    SequenceClass classification = SequenceClass::constant;
    std::optional<double> limit;  // set when |s_{k+1} - s_k| < tol was reached
    int iterations = 0;
};

// Real-valued sizing map f(t) = A*phi(t)+B with t clamped into
// [t_min, t_max]; the analysis iterates the unrounded map.
double sizing_map(const PackagerParams& p, double t);

// Iterates s <- f(g(s)) from s0 until the step shrinks below tol or
// max_iter is hit. The sequence direction is classified from the whole
// trace; comparisons are non-strict at clamp boundaries, so a saturating
// tail of equal values keeps the initial direction.
IterationTrace fixed_point_iterate(const PackagerParams& p, const PowerLawCost& g, double s0,
                                   double tol = 1e-9, int max_iter = 10000);

// Independent bisection root of h(s) = f(g(s)) - s. The bracket
// [s_min - 1, s_max + 1] always straddles a root because f maps into
// [s_min, s_max]; no sign change there is reported as an error.
double fixed_point_bisect(const PackagerParams& p, const PowerLawCost& g, double tol = 1e-9);

// Number of samples after the disturbance before the series enters and
// stays within +-band of the steady-state mean (mean of the final quartile
// after the disturbance). nullopt when the series never settles or the
// tail is shorter than 10 samples.
std::optional<int> settling_iterations(const std::vector<double>& series,
                                       std::size_t disturbance_index, double band = 0.01);

}  // namespace asap::analysis
