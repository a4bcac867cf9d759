#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "asap/config.hpp"
#include "asap/events.hpp"
#include "asap/workload.hpp"

namespace asap {

// Monotone virtual clock driving the simulation. Advances only when the
// engine says so; wall time never leaks in.
class VirtualClock {
public:
    std::int64_t now_us() const { return now_us_; }

    void advance_to(std::int64_t t_us) {
        if (t_us < now_us_) throw std::logic_error("clock: cannot move backwards");
        now_us_ = t_us;
    }

private:
    std::int64_t now_us_ = 0;
};

// --- event sources --------------------------------------------------------

struct ConstantSource {
    double rate_eps = 70000.0;  // events per second
};

struct RampSource {
    double rate_start_eps = 500000.0;
    double rate_end_eps = 8000000.0;  // reached at the end of the scenario
};

struct StepSource {
    struct Step {
        double start_s = 0.0;
        double rate_eps = 1000.0;
    };
    std::vector<Step> steps;  // ascending start_s, first at 0
};

struct BurstSource {
    double base_rate_eps = 1000.0;
    double burst_rate_eps = 100000.0;
    double period_s = 1.0;    // one burst per period
    double burst_len_s = 0.1; // burst occupies the start of each period
};

struct TraceSource {
    std::string path;
};

using SourceSpec = std::variant<ConstantSource, RampSource, StepSource, BurstSource, TraceSource>;

// Lazy event generator: Poisson arrivals at the instantaneous target rate,
// uniform payload (coordinates and polarity do not influence the control
// laws). Deterministic under the seed.
class EventSource {
public:
    EventSource(const SourceSpec& spec, double duration_s, std::uint64_t seed);
    ~EventSource();
    EventSource(EventSource&&) noexcept;
    EventSource& operator=(EventSource&&) noexcept;

    std::optional<Event> next();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// --- delivery policies ------------------------------------------------------

struct AsapPolicy {};
struct FixedSizePolicy {
    std::size_t size = 1000;
};
struct FixedRatePolicy {
    double rate_hz = 100.0;  // one package per 1/f seconds, empty windows skipped
};

using DeliveryPolicy = std::variant<AsapPolicy, FixedSizePolicy, FixedRatePolicy>;

// --- scenario + results -----------------------------------------------------

struct Scenario {
    std::string name = "scenario";
    SourceSpec source = ConstantSource{};
    Workload::Model workload = PowerLawCost{};
    DeliveryPolicy policy = AsapPolicy{};
    double duration_s = 1.0;  // ignored for trace sources (file length rules)
    AsapConfig config;

    void validate() const;
};

struct ScenarioError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One per incoming event when a sample sink is attached.
struct GammaSample {
    std::uint64_t index = 0;   // position in the incoming stream
    std::int64_t t_us = 0;
    double rate = 0.0;         // r_i, events/second
    double gamma = 0.0;        // keep probability applied
    bool kept = false;
};

struct SettlingReport {
    std::int64_t switch_us = 0;     // disturbance time
    std::size_t first_k = 0;        // first package processed under the new regime
    std::size_t end_k = 0;          // exclusive end of the segment
    std::optional<int> nu;          // packages until t_k stays within +-1%
};

struct RunSummary {
    std::uint64_t events_in = 0;
    std::uint64_t events_dropped = 0;
    std::uint64_t events_packaged = 0;  // events inside delivered packages
    std::uint64_t events_flushed = 0;   // events in the end-of-stream flush
    std::uint64_t packages_delivered = 0;
    double mean_tau_s = 0.0;
    double max_tau_s = 0.0;
    double median_tau_s = 0.0;
    double mean_t_s = 0.0;
    std::size_t max_queue_depth = 0;
    std::vector<SettlingReport> settling;
};

struct RunResult {
    std::vector<PackageMetrics> metrics;  // delivered packages, k order
    RunSummary summary;
    // (time, depth) sampled at every enqueue/dequeue
    std::vector<std::pair<std::int64_t, std::size_t>> queue_depth;
};

// Executes the closed loop on the virtual clock: source -> gamma filter ->
// assembler -> FIFO delivery queue -> processor, with the measured
// processing time fed back to both adaptive mechanisms. Static policies
// skip the filter and the adaptive target but share queue and metrics.
RunResult run_scenario(const Scenario& scenario,
                       const std::function<void(const GammaSample&)>& sample_sink = {});

// Settling measurement text + totals, deterministic formatting.
std::string summary_text(const Scenario& scenario, const RunResult& result);

}  // namespace asap
