#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <stdexcept>

namespace asap {

// Sliding-window event-rate estimate: events with timestamps in
// (now - window, now] divided by the window length. Runs on event-stream
// time, never wall time, so simulations stay deterministic.
class RateTracker {
public:
    explicit RateTracker(std::int64_t window_us = 1000) : window_us_(window_us) {
        if (window_us <= 0) throw std::invalid_argument("rate: window_us must be > 0");
    }

    // Records one event and returns the rate in events/second including it.
    double observe(std::int64_t t_us) {
        if (!stamps_.empty() && t_us < stamps_.back())
            throw std::invalid_argument("rate: timestamp regression");
        stamps_.push_back(t_us);
        while (stamps_.front() <= t_us - window_us_) stamps_.pop_front();
        rate_ = static_cast<double>(stamps_.size()) / (static_cast<double>(window_us_) * 1e-6);
        return rate_;
    }

    double rate() const { return rate_; }
    std::int64_t window_us() const { return window_us_; }

private:
    std::int64_t window_us_;
    std::deque<std::int64_t> stamps_;
    double rate_ = 0.0;
};

// Tracks the extremes of the observed rate with a per-event forgetting
// factor: the max decays by alpha toward the signal, the min grows by
// 1/alpha, and either is taken over outright when the signal crosses it.
// The takeover also acts as a floor/ceiling so that
// r_min <= r_i <= r_max holds after every update.
class RateBounds {
public:
    explicit RateBounds(double alpha = 0.9999) : alpha_(alpha) {
        if (!(alpha > 0.0 && alpha <= 1.0))
            throw std::invalid_argument("rate: alpha must be in (0, 1]");
    }

    void update(double r_i) {
        if (!seeded_) {
            r_min_ = r_max_ = r_i;
            seeded_ = true;
            return;
        }
        r_max_ = r_i > r_max_ ? r_i : std::max(r_i, alpha_ * r_max_);
        r_min_ = r_i < r_min_ ? r_i : std::min(r_i, r_min_ / alpha_);
        if (r_min_ > r_max_) {  // unreachable with the floor, kept as a guard
            double g = std::sqrt(r_min_ * r_max_);
            r_min_ = r_max_ = g;
        }
    }

    bool seeded() const { return seeded_; }
    double r_min() const { return r_min_; }
    double r_max() const { return r_max_; }
    double alpha() const { return alpha_; }

private:
    double alpha_;
    double r_min_ = 0.0;
    double r_max_ = 0.0;
    bool seeded_ = false;
};

}  // namespace asap
