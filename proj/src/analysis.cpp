#include "asap/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace asap::analysis {

double sizing_map(const PackagerParams& p, double t) { return sizing_raw(p, t); }

namespace {

double apply_cost(const PowerLawCost& g, double s) {
    double acc = 1.0;
    for (int i = 0; i < g.exponent; ++i) acc *= s;
    return g.beta0 + g.beta1 * acc;
}

}  // namespace

IterationTrace fixed_point_iterate(const PackagerParams& p, const PowerLawCost& g, double s0,
                                   double tol, int max_iter) {
    if (!(s0 > 0.0)) throw std::invalid_argument("analysis: s0 must be > 0");
    if (!(g.beta1 > 0.0)) throw std::invalid_argument("analysis: g must be strictly increasing");

    IterationTrace trace;
    trace.s.push_back(s0);
    double s = s0;
    bool saw_up = false, saw_down = false;
    const double zero_tol = 1e-12 * p.s_max;

    for (int i = 0; i < max_iter; ++i) {
        double next = sizing_map(p, apply_cost(g, s));
        trace.s.push_back(next);
        ++trace.iterations;
        double step = next - s;
        if (step > zero_tol) saw_up = true;
        if (step < -zero_tol) saw_down = true;
        if (std::abs(step) < tol) {
            trace.limit = next;
            s = next;
            break;
        }
        s = next;
    }

    if (saw_up && saw_down)
        trace.classification = SequenceClass::mixed;
    else if (saw_up)
        trace.classification = SequenceClass::strictly_increasing;
    else if (saw_down)
        trace.classification = SequenceClass::strictly_decreasing;
    else
        trace.classification = SequenceClass::constant;
    return trace;
}

double fixed_point_bisect(const PackagerParams& p, const PowerLawCost& g, double tol) {
    auto h = [&](double s) { return sizing_map(p, apply_cost(g, s)) - s; };

    double lo = p.s_min - 1.0;
    double hi = p.s_max + 1.0;
    double h_lo = h(lo), h_hi = h(hi);
    if (!(h_lo > 0.0 && h_hi < 0.0))
        throw std::runtime_error("analysis: no sign change in bracket (h(lo)=" +
                                 std::to_string(h_lo) + ", h(hi)=" + std::to_string(h_hi) + ")");

    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (h(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

std::optional<int> settling_iterations(const std::vector<double>& series,
                                       std::size_t disturbance_index, double band) {
    if (series.empty()) throw std::invalid_argument("settling: empty series");
    if (disturbance_index >= series.size())
        throw std::invalid_argument("settling: disturbance index out of range");

    std::size_t n_after = series.size() - disturbance_index;
    if (n_after < 10) return std::nullopt;

    // steady-state reference: mean of the final quartile after the disturbance
    std::size_t q = std::max<std::size_t>(n_after / 4, 1);
    double mean = 0.0;
    for (std::size_t i = series.size() - q; i < series.size(); ++i) mean += series[i];
    mean /= static_cast<double>(q);

    double tol = band * std::abs(mean);
    // first index from which every remaining sample stays in band
    std::size_t entry = series.size();
    for (std::size_t i = series.size(); i-- > disturbance_index;) {
        if (std::abs(series[i] - mean) <= tol)
            entry = i;
        else
            break;
    }
    if (entry == series.size()) return std::nullopt;
    return static_cast<int>(entry - disturbance_index);
}

}  // namespace asap::analysis
