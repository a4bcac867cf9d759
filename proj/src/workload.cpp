#include "asap/workload.hpp"

#include <algorithm>

namespace asap {

namespace {

double int_pow(double base, int p) {
    double acc = 1.0;
    for (int i = 0; i < p; ++i) acc *= base;
    return acc;
}

}  // namespace

void Workload::validate() const {
    if (const auto* pl = std::get_if<PowerLawCost>(&model_)) {
        if (!(pl->beta0 >= 0.0 && pl->beta1 > 0.0))
            throw std::invalid_argument("workload: need beta0 >= 0 and beta1 > 0");
        if (pl->exponent < 1 || pl->exponent > 3)
            throw std::invalid_argument("workload: power-law exponent must be 1, 2, or 3");
    } else if (const auto* st = std::get_if<StepScheduleCost>(&model_)) {
        if (!(st->unit_s > 0.0)) throw std::invalid_argument("workload: unit_s must be > 0");
        if (st->phases.empty()) throw std::invalid_argument("workload: empty step schedule");
        double prev = -1.0;
        for (const auto& ph : st->phases) {
            if (!(ph.switch_s >= 0.0 && ph.switch_s > prev))
                throw std::invalid_argument("workload: phase switch times must be ascending");
            if (!(ph.n > 0.0)) throw std::invalid_argument("workload: phase n must be > 0");
            prev = ph.switch_s;
        }
    } else if (const auto* si = std::get_if<SinusoidCost>(&model_)) {
        if (!(si->t_lo > 0.0 && si->t_hi > si->t_lo && si->period_s > 0.0))
            throw std::invalid_argument("workload: need 0 < t_lo < t_hi and period > 0");
    } else if (const auto* sc = std::get_if<ScriptedCost>(&model_)) {
        for (double v : sc->values)
            if (!(v > 0.0)) throw std::invalid_argument("workload: scripted costs must be > 0");
    }
}

double Workload::cost(std::size_t s_k, std::int64_t now_us) {
    if (s_k < 1) throw std::invalid_argument("workload: package size must be >= 1");

    if (const auto* pl = std::get_if<PowerLawCost>(&model_)) {
        return pl->beta0 + pl->beta1 * int_pow(static_cast<double>(s_k), pl->exponent);
    }
    if (const auto* st = std::get_if<StepScheduleCost>(&model_)) {
        double now_s = static_cast<double>(now_us) * 1e-6;
        const StepScheduleCost::Phase* active = &st->phases.front();
        for (const auto& ph : st->phases) {
            if (ph.switch_s <= now_s) active = &ph;
        }
        return st->unit_s * int_pow(active->n, active->exponent);
    }
    if (const auto* si = std::get_if<SinusoidCost>(&model_)) {
        double mid = 0.5 * (si->t_lo + si->t_hi);
        double amp = 0.5 * (si->t_hi - si->t_lo);
        double now_s = static_cast<double>(now_us) * 1e-6;
        return mid + amp * std::sin(2.0 * M_PI * now_s / si->period_s);
    }
    const auto& sc = std::get<ScriptedCost>(model_);
    if (script_index_ >= sc.values.size())
        throw std::runtime_error("workload: scripted cost list exhausted");
    return sc.values[script_index_++];
}

std::vector<std::int64_t> Workload::switch_times_us() const {
    std::vector<std::int64_t> out;
    if (const auto* st = std::get_if<StepScheduleCost>(&model_)) {
        for (std::size_t i = 1; i < st->phases.size(); ++i)
            out.push_back(static_cast<std::int64_t>(st->phases[i].switch_s * 1e6));
    }
    return out;
}

}  // namespace asap
