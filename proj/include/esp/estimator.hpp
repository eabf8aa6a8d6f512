#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>

#include "esp/bitseq.hpp"
#include "esp/schedule.hpp"

namespace esp {

// Sequential probability assignment by exponential smoothing. After each
// letter both probabilities shrink by alpha_k and the observed letter gains
// 1 - alpha_k, so p(x) stays strictly inside (0,1) for any rate sequence in
// (0,1) and any strictly positive prior.
//
// Only p(1) is stored; p(0) is always derived as 1 - p(1), which keeps the
// predicted distribution normalized exactly.
class Estimator {
public:
    explicit Estimator(const SmoothingSchedule& sched, double prior_p1 = 0.5)
        : sched_(sched), rates_(sched), prior_p1_(prior_p1), p1_(prior_p1) {
        if (!(prior_p1 > 0.0 && prior_p1 < 1.0))
            throw std::invalid_argument("prior p(1) must lie in (0,1)");
    }

    double p1() const { return p1_; }
    double p0() const { return 1.0 - p1_; }

    // Predicted distribution (p(0), p(1)) for the next letter.
    std::pair<double, double> predict() const { return {1.0 - p1_, p1_}; }

    // Code the next letter: returns its ideal code length -log2 p(bit) in
    // bits, accumulates it, and applies the smoothing update.
    double update(bool bit) {
        const double p = bit ? p1_ : 1.0 - p1_;
        const double cost = -std::log2(p);
        add_code_length(cost);
        const double alpha = rates_.advance();
        p1_ = bit ? alpha * p1_ + (1.0 - alpha) : alpha * p1_;
        return cost;
    }

    // Fold update over a whole sequence; returns the code length added by
    // this call.
    double process(const BitSequence& x) {
        const double before = code_length();
        for (std::size_t i = 0; i < x.size(); ++i)
            update(x[i]);
        return code_length() - before;
    }

    // Accumulated ideal code length in bits (compensated summation).
    double code_length() const { return codelen_ - codelen_comp_; }

    std::uint64_t steps() const { return rates_.step(); }

    const SmoothingSchedule& schedule() const { return sched_; }
    double prior_p1() const { return prior_p1_; }

private:
    void add_code_length(double cost) {
        const double y = cost - codelen_comp_;
        const double t = codelen_ + y;
        codelen_comp_ = (t - codelen_) - y;
        codelen_ = t;
    }

    SmoothingSchedule sched_;
    RateCursor rates_;
    double prior_p1_;
    double p1_;
    double codelen_ = 0.0;
    double codelen_comp_ = 0.0;
};

} // namespace esp
