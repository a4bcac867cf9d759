#include "asap/packager.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace asap {

double phi(double t, double kappa) {
    if (!(t > 0.0)) throw std::domain_error("phi: t must be > 0");
    return std::atan(kappa * std::log(t));
}

std::pair<double, double> calibrate(double s_min, double s_max, double t_min, double t_max,
                                    double kappa) {
    if (!(s_max > s_min)) throw std::invalid_argument("calibrate: s_max must exceed s_min");
    if (!(t_min > 0.0 && t_max > t_min))
        throw std::invalid_argument("calibrate: need 0 < t_min < t_max");
    double lo = phi(t_min, kappa);
    double hi = phi(t_max, kappa);
    if (!(hi > lo)) throw std::logic_error("calibrate: phi not increasing over [t_min, t_max]");
    double a = (s_max - s_min) / (hi - lo);
    double b = s_max - a * hi;
    return {a, b};
}

double inflection_point(double kappa) {
    if (!(kappa >= 1.0)) throw std::domain_error("inflection_point: kappa must be >= 1");
    return std::exp(-std::sqrt(kappa * kappa - 1.0) / kappa - 1.0);
}

double inflection_point_2(double kappa) {
    if (!(kappa >= 1.0)) throw std::domain_error("inflection_point: kappa must be >= 1");
    return std::exp(std::sqrt(kappa * kappa - 1.0) / kappa - 1.0);
}

PackagerParams PackagerParams::make(int s_min, int s_max, double t_min, double t_max,
                                    double kappa) {
    if (s_min < 1) throw std::invalid_argument("packager: s_min must be >= 1");
    if (!(kappa >= 1.0)) throw std::invalid_argument("packager: kappa must be >= 1");
    PackagerParams p;
    p.s_min = s_min;
    p.s_max = s_max;
    p.t_min = t_min;
    p.t_max = t_max;
    p.kappa = kappa;
    std::tie(p.A, p.B) = calibrate(s_min, s_max, t_min, t_max, kappa);
    return p;
}

double sizing_raw(const PackagerParams& p, double t_prev) {
    double t = std::clamp(t_prev, p.t_min, p.t_max);
    return p.A * phi(t, p.kappa) + p.B;
}

namespace {

int round_and_clamp(double s, const PackagerParams& p) {
    long long r = std::llround(s);  // half away from zero == half up for s >= 0
    return static_cast<int>(std::clamp<long long>(r, p.s_min, p.s_max));
}

}  // namespace

int target_size(double t_prev, const PackagerParams& p) {
    if (!(t_prev > 0.0)) throw std::domain_error("target_size: t_prev must be > 0");
    return round_and_clamp(sizing_raw(p, t_prev), p);
}

TaylorTable build_taylor_table(const PackagerParams& p, int order, int num_points) {
    if (order < 1) throw std::invalid_argument("taylor: order must be >= 1");
    if (num_points < 2) throw std::invalid_argument("taylor: need at least 2 points");

    TaylorTable table;
    table.order = order;
    table.kappa = p.kappa;
    table.log_lo = std::log(p.t_min);
    table.log_step = (std::log(p.t_max) - table.log_lo) / (num_points - 1);
    table.points.resize(num_points);
    table.coefficients.resize(num_points);

    const int n = order;
    std::vector<double> u(n + 1), w(n + 1), v(n + 1);
    for (int j = 0; j < num_points; ++j) {
        double a = std::exp(table.log_lo + j * table.log_step);
        table.points[j] = a;

        // series of kappa*ln(a+h): u_0 = kappa ln a, u_m = kappa (-1)^(m+1) / (m a^m)
        u[0] = p.kappa * std::log(a);
        double inv_a_pow = 1.0;
        for (int m = 1; m <= n; ++m) {
            inv_a_pow /= a;
            u[m] = p.kappa * ((m % 2 == 1) ? 1.0 : -1.0) * inv_a_pow / m;
        }
        // w = 1 + u^2, truncated
        for (int m = 0; m <= n; ++m) {
            double acc = 0.0;
            for (int i = 0; i <= m; ++i) acc += u[i] * u[m - i];
            w[m] = acc + (m == 0 ? 1.0 : 0.0);
        }
        // v = atan(u) from v' * w = u', solved coefficient by coefficient
        v[0] = std::atan(u[0]);
        for (int m = 0; m < n; ++m) {
            double acc = (m + 1) * u[m + 1];
            for (int i = 0; i < m; ++i) acc -= (i + 1) * v[i + 1] * w[m - i];
            v[m + 1] = acc / ((m + 1) * w[0]);
        }
        table.coefficients[j].assign(v.begin(), v.end());
    }
    return table;
}

double phi_taylor(double t, const TaylorTable& table) {
    if (table.points.empty()) throw std::logic_error("taylor: empty table");
    double lo = table.points.front(), hi = table.points.back();
    if (!(t >= lo * (1.0 - 1e-12) && t <= hi * (1.0 + 1e-12)))
        throw std::domain_error("phi_taylor: t outside table span");

    auto idx = static_cast<std::ptrdiff_t>(std::llround((std::log(t) - table.log_lo) / table.log_step));
    idx = std::clamp<std::ptrdiff_t>(idx, 0, static_cast<std::ptrdiff_t>(table.points.size()) - 1);

    const std::vector<double>& c = table.coefficients[static_cast<std::size_t>(idx)];
    double h = t - table.points[static_cast<std::size_t>(idx)];
    double acc = c.back();
    for (auto it = c.rbegin() + 1; it != c.rend(); ++it) acc = acc * h + *it;
    return acc;
}

int target_size(double t_prev, const PackagerParams& p, const TaylorTable& table) {
    if (!(t_prev > 0.0)) throw std::domain_error("target_size: t_prev must be > 0");
    double t = std::clamp(t_prev, p.t_min, p.t_max);
    return round_and_clamp(p.A * phi_taylor(t, table) + p.B, p);
}

PackageAssembler::PackageAssembler(std::size_t initial_target, std::optional<double> max_age_s)
    : pending_target_(std::max<std::size_t>(initial_target, 1)) {
    if (max_age_s) {
        if (!(*max_age_s > 0.0)) throw std::invalid_argument("assembler: max age must be > 0");
        max_age_us_ = static_cast<std::int64_t>(*max_age_s * 1e6);
    }
}

void PackageAssembler::set_target(std::size_t target) {
    pending_target_ = std::max<std::size_t>(target, 1);
}

EventPackage PackageAssembler::close(CloseReason reason) {
    EventPackage pkg;
    pkg.k = next_k_++;
    pkg.events = std::move(buffer_);
    pkg.target_size = frozen_target_;
    pkg.close_reason = reason;
    buffer_.clear();
    return pkg;
}

std::vector<EventPackage> PackageAssembler::push(const Event& e) {
    std::vector<EventPackage> closed;
    if (!buffer_.empty() && e.t_us < buffer_.back().t_us)
        throw std::invalid_argument("assembler: timestamp regression");

    if (max_age_us_ && !buffer_.empty() && e.t_us - buffer_.front().t_us > *max_age_us_)
        closed.push_back(close(CloseReason::flush));

    if (buffer_.empty()) frozen_target_ = pending_target_;  // package opens here
    buffer_.push_back(e);
    if (buffer_.size() >= frozen_target_) closed.push_back(close(CloseReason::size));
    return closed;
}

std::optional<EventPackage> PackageAssembler::flush() {
    if (buffer_.empty()) return std::nullopt;
    return close(CloseReason::flush);
}

}  // namespace asap
