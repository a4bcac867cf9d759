#include "asap/scenario_io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace asap {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    std::size_t e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    return out;
}

class KeyMap {
public:
    explicit KeyMap(const std::string& text) {
        std::stringstream ss(text);
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(ss, line)) {
            ++line_no;
            auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            line = trim(line);
            if (line.empty()) continue;
            auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ScenarioError("scenario: line " + std::to_string(line_no) +
                                    ": expected key = value");
            std::string key = trim(line.substr(0, eq));
            std::string value = trim(line.substr(eq + 1));
            if (key.empty() || value.empty())
                throw ScenarioError("scenario: line " + std::to_string(line_no) +
                                    ": empty key or value");
            if (!values_.emplace(key, value).second)
                throw ScenarioError("scenario: duplicate key '" + key + "'");
        }
    }

    bool has(const std::string& key) const { return values_.count(key) != 0; }

    std::string str(const std::string& key, const std::string& fallback = {}) {
        auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        used_.insert(key);
        return it->second;
    }

    double num(const std::string& key, double fallback) {
        auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        used_.insert(key);
        try {
            std::size_t pos = 0;
            double v = std::stod(it->second, &pos);
            if (pos != it->second.size()) throw std::invalid_argument("trailing");
            return v;
        } catch (const std::exception&) {
            throw ScenarioError("scenario: key '" + key + "' is not a number: " + it->second);
        }
    }

    bool flag(const std::string& key, bool fallback) {
        auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        used_.insert(key);
        if (it->second == "true" || it->second == "1") return true;
        if (it->second == "false" || it->second == "0") return false;
        throw ScenarioError("scenario: key '" + key + "' must be true/false");
    }

    void reject_unused() const {
        for (const auto& [k, v] : values_)
            if (!used_.count(k)) throw ScenarioError("scenario: unknown key '" + k + "'");
    }

private:
    std::map<std::string, std::string> values_;
    std::set<std::string> used_;
};

double parse_num(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ScenarioError("scenario: bad number in " + what + ": " + s);
    }
}

SourceSpec parse_source(KeyMap& kv) {
    std::string kind = kv.str("source", "constant");
    if (kind == "constant") return ConstantSource{kv.num("source.rate_eps", 70000.0)};
    if (kind == "ramp")
        return RampSource{kv.num("source.rate_start_eps", 500000.0),
                          kv.num("source.rate_end_eps", 8000000.0)};
    if (kind == "steps") {
        StepSource src;
        for (const std::string& item : split(kv.str("source.steps"), ',')) {
            auto parts = split(item, ':');
            if (parts.size() != 2) throw ScenarioError("scenario: source.steps wants t:rate pairs");
            src.steps.push_back({parse_num(parts[0], "source.steps"),
                                 parse_num(parts[1], "source.steps")});
        }
        return src;
    }
    if (kind == "bursts")
        return BurstSource{kv.num("source.base_rate_eps", 1000.0),
                           kv.num("source.burst_rate_eps", 100000.0),
                           kv.num("source.period_s", 1.0), kv.num("source.burst_len_s", 0.1)};
    if (kind == "trace") {
        std::string path = kv.str("source.trace");
        if (path.empty()) throw ScenarioError("scenario: trace source needs source.trace");
        return TraceSource{path};
    }
    throw ScenarioError("scenario: unknown source kind '" + kind + "'");
}

Workload::Model parse_workload(KeyMap& kv) {
    std::string kind = kv.str("workload", "power_law");
    if (kind == "power_law")
        return PowerLawCost{kv.num("workload.beta0", 0.0), kv.num("workload.beta1", 1e-6),
                            static_cast<int>(kv.num("workload.exponent", 1))};
    if (kind == "step_schedule") {
        StepScheduleCost w;
        w.unit_s = kv.num("workload.unit_s", 1e-5);
        for (const std::string& item : split(kv.str("workload.steps", "0:1:1"), ',')) {
            auto parts = split(item, ':');
            if (parts.size() != 3)
                throw ScenarioError("scenario: workload.steps wants t:n:p triples");
            w.phases.push_back({parse_num(parts[0], "workload.steps"),
                                parse_num(parts[1], "workload.steps"),
                                static_cast<int>(parse_num(parts[2], "workload.steps"))});
        }
        return w;
    }
    if (kind == "sinusoid")
        return SinusoidCost{kv.num("workload.t_lo", 1e-6), kv.num("workload.t_hi", 0.1),
                            kv.num("workload.period_s", 4.0)};
    if (kind == "scripted") {
        ScriptedCost w;
        for (const std::string& item : split(kv.str("workload.script"), ','))
            w.values.push_back(parse_num(item, "workload.script"));
        return w;
    }
    throw ScenarioError("scenario: unknown workload kind '" + kind + "'");
}

DeliveryPolicy parse_policy(KeyMap& kv) {
    std::string kind = kv.str("policy", "asap");
    if (kind == "asap") return AsapPolicy{};
    if (kind == "fixed_size")
        return FixedSizePolicy{static_cast<std::size_t>(kv.num("policy.size", 1000))};
    if (kind == "fixed_rate") return FixedRatePolicy{kv.num("policy.rate_hz", 100.0)};
    throw ScenarioError("scenario: unknown policy kind '" + kind + "'");
}

}  // namespace

Scenario parse_scenario_text(const std::string& text) {
    KeyMap kv(text);
    Scenario sc;
    sc.name = kv.str("name", "scenario");
    sc.duration_s = kv.num("duration_s", 1.0);
    sc.source = parse_source(kv);
    sc.workload = parse_workload(kv);
    sc.policy = parse_policy(kv);

    AsapConfig& cfg = sc.config;
    cfg.gamma_min = kv.num("gamma_min", cfg.gamma_min);
    cfg.gamma_max = kv.num("gamma_max", cfg.gamma_max);
    cfg.t_min = kv.num("t_min", cfg.t_min);
    cfg.t_max = kv.num("t_max", cfg.t_max);
    cfg.s_min = static_cast<int>(kv.num("s_min", cfg.s_min));
    cfg.s_max = static_cast<int>(kv.num("s_max", cfg.s_max));
    cfg.kappa = kv.num("kappa", cfg.kappa);
    cfg.alpha = kv.num("alpha", cfg.alpha);
    cfg.window_us = static_cast<std::int64_t>(kv.num("window_us", static_cast<double>(cfg.window_us)));
    cfg.seed = static_cast<std::uint64_t>(kv.num("seed", static_cast<double>(cfg.seed)));
    cfg.taylor_order = static_cast<int>(kv.num("taylor_order", cfg.taylor_order));
    cfg.taylor_points = static_cast<int>(kv.num("taylor_points", cfg.taylor_points));
    cfg.use_taylor = kv.flag("use_taylor", cfg.use_taylor);

    kv.reject_unused();
    sc.validate();
    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("scenario: cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_scenario_text(buf.str());
}

}  // namespace asap
