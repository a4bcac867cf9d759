#include "asap/events.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>

namespace asap {

namespace {

const char* skip_ws(const char* p, const char* end) {
    while (p != end && (*p == ' ' || *p == '\t')) ++p;
    return p;
}

// Parses one unsigned field up to the next comma (or end). Returns false on
// garbage or overflow.
bool parse_field(const char*& p, const char* end, std::int64_t& out, bool expect_comma) {
    p = skip_ws(p, end);
    auto [next, ec] = std::from_chars(p, end, out);
    if (ec != std::errc() || next == p) return false;
    p = skip_ws(next, end);
    if (expect_comma) {
        if (p == end || *p != ',') return false;
        ++p;
    }
    return true;
}

}  // namespace

TraceReader::TraceReader(const std::string& path) : in_(path), path_(path) {
    if (!in_) throw TraceError("trace: cannot open '" + path + "'");
}

std::optional<Event> TraceReader::next() {
    std::string line;
    while (std::getline(in_, line)) {
        ++line_no_;
        if (!line.empty() && line.back() == '\r') line.pop_back();

        const char* p = line.c_str();
        const char* end = p + line.size();
        p = skip_ws(p, end);
        if (p == end) continue;  // blank line

        if (first_line_ && !std::isdigit(static_cast<unsigned char>(*p))) {
            first_line_ = false;  // header
            continue;
        }
        first_line_ = false;

        std::int64_t t = 0, x = 0, y = 0, pol = 0;
        bool ok = parse_field(p, end, t, true) && parse_field(p, end, x, true) &&
                  parse_field(p, end, y, true) && parse_field(p, end, pol, false);
        p = skip_ws(p, end);
        ok = ok && p == end && t >= 0 && x >= 0 && x <= 0xffff && y >= 0 && y <= 0xffff &&
             (pol == 0 || pol == 1);
        if (!ok)
            throw TraceError(path_ + ": malformed line " + std::to_string(line_no_));
        if (t < prev_t_)
            throw TraceError(path_ + ": timestamp regression at event index " +
                             std::to_string(index_));

        prev_t_ = t;
        ++index_;
        return Event{t, static_cast<std::uint16_t>(x), static_cast<std::uint16_t>(y),
                     pol == 1 ? Polarity::positive : Polarity::negative};
    }
    return std::nullopt;
}

std::vector<Event> read_trace(const std::string& path) {
    TraceReader reader(path);
    std::vector<Event> events;
    while (auto e = reader.next()) events.push_back(*e);
    return events;
}

void write_trace(const std::vector<Event>& events, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw TraceError("trace: cannot write '" + path + "'");
    out << "t_us,x,y,p\n";
    for (const Event& e : events) {
        out << e.t_us << ',' << e.x << ',' << e.y << ','
            << (e.polarity == Polarity::positive ? 1 : 0) << '\n';
    }
    if (!out) throw TraceError("trace: write failed for '" + path + "'");
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9e", v);
    return buf;
}

void write_metrics(const std::vector<PackageMetrics>& records, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw TraceError("metrics: cannot write '" + path + "'");
    out << "k,s_k,t_k,tau_k,pi_k,lambda_k,gamma_mean,drop_count\n";
    for (const PackageMetrics& m : records) {
        out << m.k << ',' << m.s_k << ',' << format_double(m.t_k) << ','
            << format_double(m.tau_k) << ',' << format_double(m.pi_k) << ','
            << format_double(m.lambda_k()) << ',' << format_double(m.gamma_mean) << ','
            << m.drop_count << '\n';
    }
    if (!out) throw TraceError("metrics: write failed for '" + path + "'");
}

}  // namespace asap
