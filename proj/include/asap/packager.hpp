#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "asap/config.hpp"
#include "asap/events.hpp"

namespace asap {

// Sizing-law curve: arctan(kappa * ln t). Strictly increasing on t > 0 and
// bounded in (-pi/2, pi/2). Throws std::domain_error for t <= 0.
double phi(double t, double kappa);

// Affine coefficients (A, B) such that A*phi(t_min)+B = s_min and
// A*phi(t_max)+B = s_max.
std::pair<double, double> calibrate(double s_min, double s_max, double t_min, double t_max,
                                    double kappa);

// Processing time at which the curvature of the sizing law changes sign
// (the smaller root). kappa < 1 has no real solution.
double inflection_point(double kappa);

// The larger curvature root; exposed for analysis, unused in control.
double inflection_point_2(double kappa);

struct PackagerParams {
    int s_min = 1;
    int s_max = 1000;
    double t_min = 1e-6;
    double t_max = 0.1;
    double kappa = 5.0;
    double A = 0.0;  // derived
    double B = 0.0;  // derived

    static PackagerParams make(int s_min, int s_max, double t_min, double t_max, double kappa);
    static PackagerParams from_config(const AsapConfig& cfg) {
        return make(cfg.s_min, cfg.s_max, cfg.t_min, cfg.t_max, cfg.kappa);
    }
};

// Real-valued sizing law A*phi(clamp(t_prev)) + B, before rounding.
double sizing_raw(const PackagerParams& p, double t_prev);

// Package-size target for the given processing-time feedback: t_prev clamped
// into [t_min, t_max], sizing law evaluated, rounded half-up, clamped into
// [s_min, s_max].
int target_size(double t_prev, const PackagerParams& p);

// Tabulated Taylor expansions of phi around log-spaced operating points.
struct TaylorTable {
    int order = 0;                                   // N
    double log_lo = 0.0, log_step = 0.0;             // ln a_0 and spacing
    std::vector<double> points;                      // a_j, strictly increasing
    std::vector<std::vector<double>> coefficients;   // per point, N+1 entries
    double kappa = 0.0;
};

// Exact Taylor coefficients of phi at each operating point, obtained by
// truncated power-series composition (no finite differences involved).
TaylorTable build_taylor_table(const PackagerParams& p, int order, int num_points);

// Evaluates the expansion at the operating point nearest to t in log space.
// t outside the table span is a domain error.
double phi_taylor(double t, const TaylorTable& table);

// target_size through the tabulated fast path.
int target_size(double t_prev, const PackagerParams& p, const TaylorTable& table);

// Buffers filtered events and closes a package once the buffered count
// reaches the target. The target is sampled when a package opens and stays
// frozen until it closes, so mid-package feedback never shrinks a package
// below its current fill.
class PackageAssembler {
public:
    explicit PackageAssembler(std::size_t initial_target,
                              std::optional<double> max_age_s = std::nullopt);

    // New target, applied the next time a package opens.
    void set_target(std::size_t target);

    // Appends an event; returns any packages that closed. With the default
    // configuration at most one closes per push; an optional max-package-age
    // can additionally close the previous package first.
    std::vector<EventPackage> push(const Event& e);

    // Closes the remaining buffer (if any) as a flush package.
    std::optional<EventPackage> flush();

    std::size_t buffered() const { return buffer_.size(); }
    std::size_t current_target() const { return buffer_.empty() ? pending_target_ : frozen_target_; }
    std::uint64_t next_k() const { return next_k_; }

private:
    EventPackage close(CloseReason reason);

    std::vector<Event> buffer_;
    std::size_t pending_target_;
    std::size_t frozen_target_ = 0;
    std::optional<std::int64_t> max_age_us_;
    std::uint64_t next_k_ = 0;
};

}  // namespace asap
