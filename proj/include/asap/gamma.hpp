#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>

#include "asap/config.hpp"
#include "asap/events.hpp"
#include "asap/rng.hpp"

namespace asap {

struct GammaParams {
    double gamma_min = 0.2;
    double gamma_max = 1.0;
    double t_min = 1e-6;  // seconds
    double t_max = 0.1;   // seconds

    static GammaParams from_config(const AsapConfig& cfg) {
        return {cfg.gamma_min, cfg.gamma_max, cfg.t_min, cfg.t_max};
    }
};

// Operating level of the filter from the latest processing-time feedback.
// Affine decreasing: slow processing pulls the keep probability down.
// t_prev is clamped into [t_min, t_max]; real processors overshoot t_max
// transiently and that must not throw.
inline double update_gamma_hat(const GammaParams& p, double t_prev) {
    double t = std::clamp(t_prev, p.t_min, p.t_max);
    double ratio = (t - p.t_min) / (p.t_max - p.t_min);
    return p.gamma_max - ratio * (p.gamma_max - p.gamma_min);
}

// Per-event keep probability: interpolates between gamma_hat (at the low
// rate extreme) and gamma_min (at the high extreme). Degenerate span
// (r_max == r_min) yields gamma_hat.
inline double compute_gamma(double gamma_hat, const GammaParams& p, double r_i, double r_min,
                            double r_max) {
    if (r_max <= r_min) return gamma_hat;
    double r = std::clamp(r_i, r_min, r_max);
    double ratio = (r - r_min) / (r_max - r_min);
    return gamma_hat - ratio * (gamma_hat - p.gamma_min);
}

// Per-event filter contract: anything that maps an event to keep/drop given
// the current keep probability. Random removal is the stock strategy;
// structure-aware filters can slot in behind the same interface.
class EventFilter {
public:
    virtual ~EventFilter() = default;
    virtual bool keep(const Event& e, double gamma_i) = 0;
};

// Random removal: draw rho ~ U(0,1) from a seeded mt19937_64 and keep the
// event iff rho < gamma_i. gamma_i = 1 keeps everything, 0 drops everything.
class RandomDropFilter final : public EventFilter {
public:
    explicit RandomDropFilter(std::uint64_t seed) : rng_(seed) {}

    bool keep(const Event&, double gamma_i) override {
        if (!(gamma_i >= 0.0 && gamma_i <= 1.0))
            throw std::invalid_argument("gamma: keep probability outside [0, 1]");
        return uniform01(rng_) < gamma_i;
    }

private:
    std::mt19937_64 rng_;
};

}  // namespace asap
