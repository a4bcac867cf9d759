#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <variant>
#include <vector>

namespace asap {

// Synthetic processor cost models. All produce strictly positive times;
// the power law is strictly increasing in the package size.

// t = beta0 + beta1 * s^p
struct PowerLawCost {
    double beta0 = 0.0;   // per-package overhead, seconds
    double beta1 = 1e-6;  // per-event cost scale, seconds
    int exponent = 1;     // p in {1, 2, 3}
};

// Piecewise-constant cost t = unit_s * n^p, switched on virtual time.
struct StepScheduleCost {
    struct Phase {
        double switch_s = 0.0;  // phase becomes active at this virtual time
        double n = 1.0;         // constant-cost factor
        int exponent = 1;
    };
    double unit_s = 1e-5;
    std::vector<Phase> phases;  // ascending switch_s, first at 0
};

// Cost oscillating between t_lo and t_hi, independent of package size.
struct SinusoidCost {
    double t_lo = 1e-6;
    double t_hi = 0.1;
    double period_s = 4.0;
};

// Explicit per-call cost list; running past the end is an error.
struct ScriptedCost {
    std::vector<double> values;
};

class Workload {
public:
    using Model = std::variant<PowerLawCost, StepScheduleCost, SinusoidCost, ScriptedCost>;

    Workload() : model_(PowerLawCost{}) {}
    explicit Workload(Model model) : model_(std::move(model)) { validate(); }

    // Processing time for a package of s_k events starting at virtual time
    // now_us. Scripted workloads consume one list entry per call.
    double cost(std::size_t s_k, std::int64_t now_us);

    const Model& model() const { return model_; }

    // Virtual times at which the cost regime changes (step schedules only);
    // used to place settling-measurement disturbances.
    std::vector<std::int64_t> switch_times_us() const;

private:
    void validate() const;

    Model model_;
    std::size_t script_index_ = 0;
};

// Stateless single evaluation (spec'd entry point); scripted call index is
// whatever the workload instance has consumed so far.
inline double simulate_cost(Workload& w, std::size_t s_k, std::int64_t now_us) {
    return w.cost(s_k, now_us);
}

}  // namespace asap
