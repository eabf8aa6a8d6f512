#include "esp/schedule.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace esp {

SmoothingSchedule SmoothingSchedule::fixed(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("fixed rate must lie in (0,1)");
    return {ScheduleKind::Fixed, alpha, 0};
}

SmoothingSchedule SmoothingSchedule::decaying() {
    return {ScheduleKind::Decaying, 0.0, 0};
}

SmoothingSchedule SmoothingSchedule::count_smoothing(double lambda, std::uint32_t m) {
    if (!(lambda > 0.0 && lambda < 1.0))
        throw std::invalid_argument("count smoothing rate must lie in (0,1)");
    if (m < 1)
        throw std::invalid_argument("count smoothing needs m >= 1");
    return {ScheduleKind::Count, lambda, m};
}

double SmoothingSchedule::count_t0() const {
    // (1 - lambda^m) / (1 - lambda); avoids the m-term sum for large m
    return (1.0 - std::pow(param_, double(m_))) / (1.0 - param_);
}

double SmoothingSchedule::rate_at(std::uint64_t k) const {
    if (k == 0)
        throw std::invalid_argument("rates are defined for k >= 1");
    switch (kind_) {
    case ScheduleKind::Fixed:
        return param_;
    case ScheduleKind::Decaying:
        return std::exp(-std::numbers::pi / std::sqrt(12.0 * double(k + 1)));
    case ScheduleKind::Count: {
        // t_k = 1 + lambda + ... + lambda^{k+m-1} = (1 - lambda^{k+m}) / (1 - lambda)
        const double tk =
            (1.0 - std::pow(param_, double(k + m_))) / (1.0 - param_);
        return (tk - 1.0) / tk;
    }
    }
    throw std::logic_error("unreachable");
}

SmoothingSchedule SmoothingSchedule::from_params(std::uint8_t id, double param1,
                                                 std::uint32_t param2) {
    switch (id) {
    case 0: return fixed(param1);
    case 1: return decaying();
    case 2: return count_smoothing(param1, param2);
    default:
        throw std::invalid_argument("unknown schedule id");
    }
}

RateCursor::RateCursor(const SmoothingSchedule& sched)
    : kind_(sched.kind()), param_(sched.param1()),
      t_(kind_ == ScheduleKind::Count ? sched.count_t0() : 0.0) {}

double RateCursor::advance() {
    ++k_;
    switch (kind_) {
    case ScheduleKind::Fixed:
        return param_;
    case ScheduleKind::Decaying:
        return std::exp(-std::numbers::pi / std::sqrt(12.0 * double(k_ + 1)));
    case ScheduleKind::Count:
        t_ = param_ * t_ + 1.0;
        return (t_ - 1.0) / t_;
    }
    throw std::logic_error("unreachable");
}

ScheduleCursor::ScheduleCursor(const SmoothingSchedule& sched) : rates_(sched) {}

void ScheduleCursor::advance() { advance_rate(); }

double ScheduleCursor::advance_rate() {
    const double alpha = rates_.advance();
    beta_ *= alpha;
    // compensated accumulation of log2 beta
    const double y = std::log2(alpha) - log2_comp_;
    const double t = log2_beta_ + y;
    log2_comp_ = (t - log2_beta_) - y;
    log2_beta_ = t;
    return alpha;
}

double optimal_fixed_alpha(std::uint64_t n) {
    if (n < 2)
        throw std::invalid_argument("optimal fixed rate needs n >= 2");
    return std::exp(-std::numbers::pi / std::sqrt(6.0 * double(n - 1)));
}

std::vector<double> log2_beta_prefix(const SmoothingSchedule& sched, std::size_t count) {
    std::vector<double> out;
    out.reserve(count);
    ScheduleCursor cursor(sched);
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(cursor.log2_beta());
        cursor.advance();
    }
    return out;
}

} // namespace esp
