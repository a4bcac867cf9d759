#include "asap/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <random>
#include <sstream>

#include "asap/analysis.hpp"
#include "asap/gamma.hpp"
#include "asap/packager.hpp"
#include "asap/rate.hpp"
#include "asap/rng.hpp"

namespace asap {

// --- source ----------------------------------------------------------------

struct EventSource::Impl {
    SourceSpec spec;
    double duration_s = 0.0;
    std::mt19937_64 rng;
    double t_acc_s = 0.0;
    std::optional<TraceReader> trace;

    Impl(const SourceSpec& s, double dur, std::uint64_t seed)
        : spec(s), duration_s(dur), rng(seed) {
        if (const auto* tr = std::get_if<TraceSource>(&spec)) trace.emplace(tr->path);
    }

    double rate_at(double t_s) const {
        if (const auto* c = std::get_if<ConstantSource>(&spec)) return c->rate_eps;
        if (const auto* r = std::get_if<RampSource>(&spec)) {
            double frac = duration_s > 0.0 ? std::clamp(t_s / duration_s, 0.0, 1.0) : 1.0;
            return r->rate_start_eps + frac * (r->rate_end_eps - r->rate_start_eps);
        }
        if (const auto* st = std::get_if<StepSource>(&spec)) {
            double rate = st->steps.front().rate_eps;
            for (const auto& step : st->steps)
                if (step.start_s <= t_s) rate = step.rate_eps;
            return rate;
        }
        const auto& b = std::get<BurstSource>(spec);
        double phase = std::fmod(t_s, b.period_s);
        return phase < b.burst_len_s ? b.burst_rate_eps : b.base_rate_eps;
    }

    std::optional<Event> next() {
        if (trace) return trace->next();

        double rate = rate_at(t_acc_s);
        double gap_s = -std::log1p(-uniform01(rng)) / rate;
        t_acc_s += gap_s;
        if (t_acc_s >= duration_s) return std::nullopt;

        Event e;
        e.t_us = std::llround(t_acc_s * 1e6);
        e.x = static_cast<std::uint16_t>(rng() % 346);
        e.y = static_cast<std::uint16_t>(rng() % 260);
        e.polarity = (rng() & 1) ? Polarity::positive : Polarity::negative;
        return e;
    }
};

EventSource::EventSource(const SourceSpec& spec, double duration_s, std::uint64_t seed)
    : impl_(std::make_unique<Impl>(spec, duration_s, seed)) {}
EventSource::~EventSource() = default;
EventSource::EventSource(EventSource&&) noexcept = default;
EventSource& EventSource::operator=(EventSource&&) noexcept = default;
std::optional<Event> EventSource::next() { return impl_->next(); }

// --- scenario validation -----------------------------------------------------

void Scenario::validate() const {
    config.validate();
    if (!std::holds_alternative<TraceSource>(source) && !(duration_s > 0.0))
        throw ScenarioError("scenario: duration must be > 0");

    if (const auto* c = std::get_if<ConstantSource>(&source)) {
        if (!(c->rate_eps > 0.0)) throw ScenarioError("scenario: source rate must be > 0");
    } else if (const auto* r = std::get_if<RampSource>(&source)) {
        if (!(r->rate_start_eps > 0.0 && r->rate_end_eps > 0.0))
            throw ScenarioError("scenario: ramp rates must be > 0");
    } else if (const auto* st = std::get_if<StepSource>(&source)) {
        if (st->steps.empty()) throw ScenarioError("scenario: step source needs steps");
        double prev = -1.0;
        for (const auto& s : st->steps) {
            if (!(s.rate_eps > 0.0 && s.start_s > prev))
                throw ScenarioError("scenario: step source rates > 0, times ascending");
            prev = s.start_s;
        }
    } else if (const auto* b = std::get_if<BurstSource>(&source)) {
        if (!(b->base_rate_eps > 0.0 && b->burst_rate_eps > 0.0 && b->period_s > 0.0 &&
              b->burst_len_s > 0.0 && b->burst_len_s <= b->period_s))
            throw ScenarioError("scenario: invalid burst source");
    }

    if (const auto* fs = std::get_if<FixedSizePolicy>(&policy)) {
        if (fs->size < 1) throw ScenarioError("scenario: fixed size must be >= 1");
    } else if (const auto* fr = std::get_if<FixedRatePolicy>(&policy)) {
        if (!(fr->rate_hz > 0.0)) throw ScenarioError("scenario: fixed rate must be > 0");
    }

    try {
        Workload probe{Workload::Model(workload)};
    } catch (const std::invalid_argument& e) {
        throw ScenarioError(e.what());
    }
}

// --- the closed loop ---------------------------------------------------------

namespace {

constexpr std::int64_t kNever = std::numeric_limits<std::int64_t>::max();

struct PendingPackage {
    EventPackage pkg;
    std::int64_t enqueue_us = 0;
    double gamma_mean = 1.0;
    std::uint64_t drops = 0;
};

struct Engine {
    const Scenario& sc;
    const std::function<void(const GammaSample&)>& sink;

    bool adaptive;
    std::optional<std::size_t> fixed_size;
    std::optional<std::int64_t> rate_period_us;

    VirtualClock clock;
    RateTracker tracker;
    RateBounds bounds;
    GammaParams gparams;
    double gamma_hat;
    RandomDropFilter filter;
    PackagerParams pparams;
    std::optional<TaylorTable> table;
    Workload workload;
    PackageAssembler assembler;

    std::deque<PendingPackage> queue;
    bool busy = false;
    PendingPackage in_service;
    std::int64_t dequeue_us = 0;
    std::int64_t busy_until_us = 0;
    double cost_s = 0.0;

    // gamma statistics for the package currently being built
    double interval_gamma_sum = 0.0;
    std::uint64_t interval_gamma_count = 0;
    std::uint64_t interval_drops = 0;

    std::optional<std::int64_t> window_end_us;  // fixed-rate close boundary
    std::uint64_t event_index = 0;

    RunResult out;

    explicit Engine(const Scenario& scenario, const std::function<void(const GammaSample&)>& s)
        : sc(scenario),
          sink(s),
          adaptive(std::holds_alternative<AsapPolicy>(scenario.policy)),
          tracker(scenario.config.window_us),
          bounds(scenario.config.alpha),
          gparams(GammaParams::from_config(scenario.config)),
          gamma_hat(update_gamma_hat(gparams, scenario.config.t_min)),
          filter(derive_seed(scenario.config.seed, 1)),
          pparams(PackagerParams::from_config(scenario.config)),
          workload(Workload::Model(scenario.workload)),
          assembler(1) {
        if (const auto* fs = std::get_if<FixedSizePolicy>(&scenario.policy)) fixed_size = fs->size;
        if (const auto* fr = std::get_if<FixedRatePolicy>(&scenario.policy))
            rate_period_us = std::max<std::int64_t>(1, std::llround(1e6 / fr->rate_hz));

        if (sc.config.use_taylor)
            table = build_taylor_table(pparams, sc.config.taylor_order, sc.config.taylor_points);

        if (adaptive)
            assembler.set_target(static_cast<std::size_t>(next_target(sc.config.t_min)));
        else if (fixed_size)
            assembler.set_target(*fixed_size);
        else
            assembler.set_target(std::numeric_limits<std::size_t>::max());  // boundary closes
    }

    int next_target(double t_prev) const {
        return table ? target_size(t_prev, pparams, *table) : target_size(t_prev, pparams);
    }

    void note_depth(std::int64_t t_us) { out.queue_depth.emplace_back(t_us, queue.size()); }

    void start_next(std::int64_t at_us) {
        in_service = std::move(queue.front());
        queue.pop_front();
        note_depth(at_us);
        dequeue_us = at_us;
        cost_s = workload.cost(in_service.pkg.size(), at_us);
        busy_until_us = at_us + std::llround(cost_s * 1e6);
        busy = true;
    }

    void enqueue(EventPackage&& pkg, std::int64_t at_us) {
        PendingPackage pending;
        pending.pkg = std::move(pkg);
        pending.enqueue_us = at_us;
        pending.gamma_mean =
            interval_gamma_count ? interval_gamma_sum / static_cast<double>(interval_gamma_count)
                                 : 1.0;
        pending.drops = interval_drops;
        interval_gamma_sum = 0.0;
        interval_gamma_count = 0;
        interval_drops = 0;

        queue.push_back(std::move(pending));
        note_depth(at_us);
        if (!busy) start_next(at_us);
    }

    void complete() {
        std::int64_t at_us = busy_until_us;
        clock.advance_to(at_us);

        PackageMetrics m;
        m.k = in_service.pkg.k;
        m.s_k = in_service.pkg.size();
        m.t_k = cost_s;
        m.tau_k = static_cast<double>(dequeue_us - in_service.enqueue_us) * 1e-6;
        m.pi_k = static_cast<double>(in_service.pkg.t_last_us() - in_service.pkg.t_first_us()) * 1e-6;
        m.gamma_mean = in_service.gamma_mean;
        m.drop_count = in_service.drops;
        m.enqueue_us = in_service.enqueue_us;
        m.dequeue_us = dequeue_us;
        out.metrics.push_back(m);
        out.summary.events_packaged += m.s_k;

        if (adaptive) {
            gamma_hat = update_gamma_hat(gparams, cost_s);
            assembler.set_target(static_cast<std::size_t>(next_target(cost_s)));
        }

        busy = false;
        if (!queue.empty()) start_next(at_us);
    }

    void ingest(const Event& e) {
        clock.advance_to(e.t_us);
        ++out.summary.events_in;

        bool kept = true;
        if (adaptive) {
            double r = tracker.observe(e.t_us);
            bounds.update(r);
            double gamma_i = compute_gamma(gamma_hat, gparams, r, bounds.r_min(), bounds.r_max());
            kept = filter.keep(e, gamma_i);
            interval_gamma_sum += gamma_i;
            ++interval_gamma_count;
            if (sink) sink(GammaSample{event_index, e.t_us, r, gamma_i, kept});
        }
        ++event_index;
        if (!kept) {
            ++interval_drops;
            ++out.summary.events_dropped;
            return;
        }

        if (rate_period_us && assembler.buffered() == 0)
            window_end_us = (e.t_us / *rate_period_us + 1) * *rate_period_us;

        for (EventPackage& pkg : assembler.push(e)) enqueue(std::move(pkg), e.t_us);
        if (assembler.buffered() == 0) window_end_us.reset();
    }

    void close_rate_window() {
        std::int64_t at_us = *window_end_us;
        clock.advance_to(at_us);
        window_end_us.reset();
        if (auto pkg = assembler.flush()) {
            pkg->close_reason = CloseReason::rate_boundary;
            enqueue(std::move(*pkg), at_us);
        }
    }

    void run() {
        EventSource source(sc.source, sc.duration_s, derive_seed(sc.config.seed, 0));
        std::optional<Event> next_event = source.next();

        while (true) {
            std::int64_t t_done = busy ? busy_until_us : kNever;
            std::int64_t t_boundary = window_end_us ? *window_end_us : kNever;
            std::int64_t t_event = next_event ? next_event->t_us : kNever;

            if (t_done <= t_boundary && t_done <= t_event && t_done != kNever) {
                complete();
            } else if (t_boundary <= t_event && t_boundary != kNever) {
                close_rate_window();
            } else if (t_event != kNever) {
                ingest(*next_event);
                next_event = source.next();
            } else {
                break;
            }
        }

        // end of stream: flush the partial package (counted, not delivered)
        if (auto pkg = assembler.flush()) out.summary.events_flushed += pkg->size();

        finalize_summary();
    }

    void finalize_summary() {
        RunSummary& s = out.summary;
        s.packages_delivered = out.metrics.size();

        std::vector<double> taus;
        taus.reserve(out.metrics.size());
        double tau_sum = 0.0, t_sum = 0.0;
        for (const auto& m : out.metrics) {
            taus.push_back(m.tau_k);
            tau_sum += m.tau_k;
            t_sum += m.t_k;
            s.max_tau_s = std::max(s.max_tau_s, m.tau_k);
        }
        if (!taus.empty()) {
            s.mean_tau_s = tau_sum / static_cast<double>(taus.size());
            s.mean_t_s = t_sum / static_cast<double>(taus.size());
            std::vector<double> sorted = taus;
            std::sort(sorted.begin(), sorted.end());
            s.median_tau_s = sorted[sorted.size() / 2];
        }
        for (const auto& [t, depth] : out.queue_depth)
            s.max_queue_depth = std::max(s.max_queue_depth, depth);

        // settling per workload regime change, measured on the t_k series
        std::vector<std::int64_t> switches = workload.switch_times_us();
        for (std::size_t j = 0; j < switches.size(); ++j) {
            SettlingReport rep;
            rep.switch_us = switches[j];
            auto start_of = [&](std::int64_t t_us) {
                std::size_t k = 0;
                while (k < out.metrics.size() && out.metrics[k].dequeue_us < t_us) ++k;
                return k;
            };
            rep.first_k = start_of(switches[j]);
            rep.end_k = j + 1 < switches.size() ? start_of(switches[j + 1]) : out.metrics.size();
            if (rep.first_k < rep.end_k) {
                std::vector<double> series;
                series.reserve(rep.end_k);
                for (std::size_t k = 0; k < rep.end_k; ++k) series.push_back(out.metrics[k].t_k);
                rep.nu = analysis::settling_iterations(series, rep.first_k);
            }
            s.settling.push_back(rep);
        }
    }
};

}  // namespace

RunResult run_scenario(const Scenario& scenario,
                       const std::function<void(const GammaSample&)>& sample_sink) {
    scenario.validate();
    Engine engine(scenario, sample_sink);
    engine.run();
    return std::move(engine.out);
}

std::string summary_text(const Scenario& scenario, const RunResult& result) {
    std::ostringstream os;
    const RunSummary& s = result.summary;

    os << "scenario: " << scenario.name << '\n';
    os << "policy: ";
    if (std::holds_alternative<AsapPolicy>(scenario.policy))
        os << "asap";
    else if (const auto* fs = std::get_if<FixedSizePolicy>(&scenario.policy))
        os << "fixed_size(" << fs->size << ")";
    else
        os << "fixed_rate(" << format_double(std::get<FixedRatePolicy>(scenario.policy).rate_hz)
           << ")";
    os << '\n';
    os << "duration_s: " << format_double(scenario.duration_s) << '\n';
    os << "events_in: " << s.events_in << '\n';
    os << "events_dropped: " << s.events_dropped << '\n';
    os << "events_packaged: " << s.events_packaged << '\n';
    os << "events_flushed: " << s.events_flushed << '\n';
    os << "packages_delivered: " << s.packages_delivered << '\n';
    os << "mean_tau_s: " << format_double(s.mean_tau_s) << '\n';
    os << "max_tau_s: " << format_double(s.max_tau_s) << '\n';
    os << "median_tau_s: " << format_double(s.median_tau_s) << '\n';
    os << "mean_t_s: " << format_double(s.mean_t_s) << '\n';
    os << "max_queue_depth: " << s.max_queue_depth << '\n';
    for (const auto& rep : s.settling) {
        os << "nu[switch_t=" << format_double(static_cast<double>(rep.switch_us) * 1e-6)
           << " k=" << rep.first_k << ".." << rep.end_k << "] = ";
        if (rep.nu)
            os << *rep.nu;
        else
            os << "undefined";
        os << '\n';
    }
    return os.str();
}

}  // namespace asap
