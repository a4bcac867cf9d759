#pragma once

#include <cstdint>
#include <stdexcept>

namespace asap {

// Full parameter set for the adaptive event handler plus harness-level
// knobs (forgetting factor, rate window, RNG seed, Taylor fast path).
struct AsapConfig {
    double gamma_min = 0.2;   // lower bound for the keep probability
    double gamma_max = 1.0;   // upper bound for the keep probability
    double t_min = 1e-6;      // seconds, lower bound for processing-time feedback
    double t_max = 0.1;       // seconds, upper bound for processing-time feedback
    int s_min = 1;            // minimum package size, events
    int s_max = 1000;         // maximum package size, events
    double kappa = 5.0;       // curvature of the sizing law

    double alpha = 0.9999;            // per-event forgetting factor for rate extremes
    std::int64_t window_us = 1000;    // sliding window for the rate estimate
    std::uint64_t seed = 1;

    int taylor_order = 5;
    int taylor_points = 64;
    bool use_taylor = false;

    void validate() const {
        if (!(0.0 <= gamma_min && gamma_min <= gamma_max && gamma_max <= 1.0))
            throw std::invalid_argument("config: need 0 <= gamma_min <= gamma_max <= 1");
        if (!(0.0 < t_min && t_min < t_max))
            throw std::invalid_argument("config: need 0 < t_min < t_max");
        if (!(s_min >= 1 && s_max > s_min))
            throw std::invalid_argument("config: need s_min >= 1 and s_max > s_min");
        if (!(kappa >= 1.0))
            throw std::invalid_argument("config: need kappa >= 1");
        if (!(0.0 < alpha && alpha <= 1.0))
            throw std::invalid_argument("config: need alpha in (0, 1]");
        if (window_us <= 0)
            throw std::invalid_argument("config: need window_us > 0");
        if (taylor_order < 1 || taylor_points < 2)
            throw std::invalid_argument("config: need taylor_order >= 1 and taylor_points >= 2");
    }
};

}  // namespace asap
