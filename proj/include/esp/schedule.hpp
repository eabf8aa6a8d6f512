#pragma once

#include <cstdint>
#include <vector>

namespace esp {

enum class ScheduleKind : std::uint8_t {
    Fixed = 0,     // alpha_k = alpha
    Decaying = 1,  // alpha_k = exp(-pi / sqrt(12 (k+1)))
    Count = 2,     // alpha_k = (t_k - 1) / t_k with t_k = lambda t_{k-1} + 1
};

// Descriptor of a smoothing rate sequence alpha_1, alpha_2, ...
// Immutable; iteration state lives in RateCursor / ScheduleCursor.
class SmoothingSchedule {
public:
    static SmoothingSchedule fixed(double alpha);
    static SmoothingSchedule decaying();
    // Count smoothing with rate lambda and initial total
    // t_0 = 1 + lambda + ... + lambda^{m-1}.
    static SmoothingSchedule count_smoothing(double lambda, std::uint32_t m);

    ScheduleKind kind() const { return kind_; }

    // alpha_k for k >= 1.
    double rate_at(std::uint64_t k) const;

    // True iff every rate exceeds 1/2. All three kinds produce non-decreasing
    // rate sequences, so checking alpha_1 suffices.
    bool assumption1_satisfied() const { return rate_at(1) > 0.5; }

    // Serialized parameter record: (kind id, param1, param2).
    // param1 is alpha or lambda (0 for the decaying kind), param2 is m (0 if
    // unused). Shared by the container header and the CLI.
    double param1() const { return param_; }
    std::uint32_t param2() const { return kind_ == ScheduleKind::Count ? m_ : 0; }
    static SmoothingSchedule from_params(std::uint8_t id, double param1,
                                         std::uint32_t param2);

    // t_0 for the count kind, via the closed form (1 - lambda^m) / (1 - lambda).
    double count_t0() const;

private:
    SmoothingSchedule(ScheduleKind kind, double param, std::uint32_t m)
        : kind_(kind), param_(param), m_(m) {}

    ScheduleKind kind_;
    double param_;
    std::uint32_t m_;
};

// Sequential rate iterator: yields alpha_1, alpha_2, ... in O(1) per step.
class RateCursor {
public:
    explicit RateCursor(const SmoothingSchedule& sched);

    // Consume and return alpha_{k+1}.
    double advance();

    std::uint64_t step() const { return k_; }

private:
    ScheduleKind kind_;
    double param_;
    std::uint64_t k_ = 0;
    double t_; // smoothed total t_k (count kind only)
};

// Rate iterator that additionally tracks beta_k = alpha_1 * ... * alpha_k,
// both as a plain product and as a compensated sum of log2 alpha_k so very
// long runs survive underflow of the product.
class ScheduleCursor {
public:
    explicit ScheduleCursor(const SmoothingSchedule& sched);

    void advance();
    double advance_rate(); // advance and return the consumed rate

    std::uint64_t step() const { return rates_.step(); }
    double beta() const { return beta_; }       // beta_k; may underflow to 0
    double log2_beta() const { return log2_beta_ - log2_comp_; }

private:
    RateCursor rates_;
    double beta_ = 1.0;
    double log2_beta_ = 0.0;
    double log2_comp_ = 0.0; // Kahan compensation
};

// exp(-pi / sqrt(6 (n-1))): the fixed rate minimizing the single-rate
// redundancy bound for length n. Exceeds 1/2 only for n >= 5; callers can
// check assumption1_satisfied() on the resulting schedule.
double optimal_fixed_alpha(std::uint64_t n);

// log2 beta_0 .. log2 beta_{count-1}.
std::vector<double> log2_beta_prefix(const SmoothingSchedule& sched, std::size_t count);

} // namespace esp
