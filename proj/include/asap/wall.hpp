#pragma once

#include <chrono>
#include <functional>
#include <vector>

#include "asap/config.hpp"
#include "asap/events.hpp"
#include "asap/gamma.hpp"
#include "asap/packager.hpp"
#include "asap/rate.hpp"
#include "asap/rng.hpp"

namespace asap {

// Wall-clock adapter: the same filter -> assembler -> feedback loop driven
// by a real event feed and a user processor. Rates come from the event
// timestamps; processing time is measured around the callback and fed back
// to both mechanisms. Single-threaded: the processor runs inline when a
// package closes. Nondeterministic by nature, so it is exercised only by a
// smoke test.
class WallPipeline {
public:
    using Processor = std::function<void(const EventPackage&)>;

    WallPipeline(const AsapConfig& cfg, Processor processor)
        : cfg_(cfg),
          tracker_(cfg.window_us),
          bounds_(cfg.alpha),
          gparams_(GammaParams::from_config(cfg)),
          gamma_hat_(update_gamma_hat(gparams_, cfg.t_min)),
          filter_(derive_seed(cfg.seed, 1)),
          pparams_(PackagerParams::from_config(cfg)),
          assembler_(static_cast<std::size_t>(target_size(cfg.t_min, pparams_))),
          processor_(std::move(processor)) {
        cfg.validate();
        if (!processor_) throw std::invalid_argument("wall: processor callback required");
    }

    // Feeds one event; any package that closes is processed inline.
    void push(const Event& e) {
        double r = tracker_.observe(e.t_us);
        bounds_.update(r);
        double gamma_i = compute_gamma(gamma_hat_, gparams_, r, bounds_.r_min(), bounds_.r_max());
        if (!filter_.keep(e, gamma_i)) {
            ++drops_;
            return;
        }
        for (EventPackage& pkg : assembler_.push(e)) process(std::move(pkg));
    }

    // Closes and processes whatever is buffered.
    void flush() {
        if (auto pkg = assembler_.flush()) process(std::move(*pkg));
    }

    const std::vector<PackageMetrics>& metrics() const { return metrics_; }
    std::uint64_t dropped() const { return drops_; }

private:
    void process(EventPackage&& pkg) {
        using clock = std::chrono::steady_clock;
        auto start = clock::now();
        processor_(pkg);
        double t_k = std::chrono::duration<double>(clock::now() - start).count();

        PackageMetrics m;
        m.k = pkg.k;
        m.s_k = pkg.size();
        m.t_k = t_k;
        m.tau_k = 0.0;  // processed at close; no delivery queue in this adapter
        m.pi_k = static_cast<double>(pkg.t_last_us() - pkg.t_first_us()) * 1e-6;
        m.drop_count = drops_ - drops_reported_;
        drops_reported_ = drops_;
        metrics_.push_back(m);

        gamma_hat_ = update_gamma_hat(gparams_, t_k);
        assembler_.set_target(static_cast<std::size_t>(target_size(t_k, pparams_)));
    }

    AsapConfig cfg_;
    RateTracker tracker_;
    RateBounds bounds_;
    GammaParams gparams_;
    double gamma_hat_;
    RandomDropFilter filter_;
    PackagerParams pparams_;
    PackageAssembler assembler_;
    Processor processor_;
    std::vector<PackageMetrics> metrics_;
    std::uint64_t drops_ = 0;
    std::uint64_t drops_reported_ = 0;
};

}  // namespace asap
