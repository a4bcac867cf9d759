#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace asap {

enum class Polarity : std::uint8_t { negative = 0, positive = 1 };

// One pixel change. Timestamps are integer microseconds since the stream
// epoch; within a stream they are non-decreasing (equal timestamps allowed,
// file order breaks ties).
struct Event {
    std::int64_t t_us = 0;
    std::uint16_t x = 0;
    std::uint16_t y = 0;
    Polarity polarity = Polarity::positive;

    bool operator==(const Event&) const = default;
};

enum class CloseReason : std::uint8_t { size, rate_boundary, flush };

// Ordered batch of events delivered as one unit to the processor.
struct EventPackage {
    std::uint64_t k = 0;            // package sequence number
    std::vector<Event> events;      // non-empty, sorted by t_us
    std::size_t target_size = 0;    // target in force when the package closed
    CloseReason close_reason = CloseReason::size;

    std::int64_t t_first_us() const { return events.front().t_us; }
    std::int64_t t_last_us() const { return events.back().t_us; }
    std::size_t size() const { return events.size(); }
    bool flush_closed() const { return close_reason == CloseReason::flush; }
};

// Per-package record. Latency is defined as tau + pi and is always computed,
// never stored, so the identity cannot drift.
struct PackageMetrics {
    std::uint64_t k = 0;
    std::size_t s_k = 0;          // events in the package
    double t_k = 0.0;             // processing time, seconds
    double tau_k = 0.0;           // delivery (queue wait) time, seconds
    double pi_k = 0.0;            // building time: newest - oldest timestamp, seconds
    double gamma_mean = 1.0;      // mean keep probability while the package was built
    std::uint64_t drop_count = 0; // events discarded while the package was built

    // harness-side bookkeeping, not part of the CSV schema
    std::int64_t enqueue_us = 0;
    std::int64_t dequeue_us = 0;

    double lambda_k() const { return tau_k + pi_k; }
};

struct TraceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Streaming reader for the trace CSV `t_us,x,y,p`. One optional header line
// (first line starting with a non-digit) is skipped. Validates monotone
// non-decreasing timestamps.
class TraceReader {
public:
    explicit TraceReader(const std::string& path);

    // Next event in file order, or nullopt at end of file.
    std::optional<Event> next();

private:
    std::ifstream in_;
    std::string path_;
    std::size_t line_no_ = 0;
    std::size_t index_ = 0;  // events yielded so far
    std::int64_t prev_t_ = -1;
    bool first_line_ = true;
};

std::vector<Event> read_trace(const std::string& path);
void write_trace(const std::vector<Event>& events, const std::string& path);

// CSV with header `k,s_k,t_k,tau_k,pi_k,lambda_k,gamma_mean,drop_count`,
// times in seconds with 10 significant digits, rows in k order.
void write_metrics(const std::vector<PackageMetrics>& records, const std::string& path);

// Fixed scientific formatting used by every CSV writer (deterministic bytes).
std::string format_double(double v);

}  // namespace asap
