#pragma once

// Test-only reference implementations, kept independent of the library code
// paths they are used to check.

#include <cmath>
#include <cstdint>
#include <vector>

#include "esp/bitseq.hpp"
#include "esp/rng.hpp"

namespace esp::test {

// Direct smoothed-count predictor: counts decay by lambda before the
// observed letter's count gains 1; prediction is count over total.
struct SmoothedCountPredictor {
    double s0, s1, t, lambda;

    SmoothedCountPredictor(double s0_, double s1_, double lambda_)
        : s0(s0_), s1(s1_), t(s0_ + s1_), lambda(lambda_) {}

    double predict(bool bit) const { return (bit ? s1 : s0) / t; }

    // returns the prediction for the observed letter, then updates
    double predict_update(bool bit) {
        const double p = predict(bit);
        s0 = lambda * s0 + (bit ? 0.0 : 1.0);
        s1 = lambda * s1 + (bit ? 1.0 : 0.0);
        t = lambda * t + 1.0;
        return p;
    }
};

// Entropy from scratch via letter counting, no shared code with the library.
inline double brute_entropy(const BitSequence& x, std::size_t begin, std::size_t end) {
    std::size_t ones = 0;
    for (std::size_t i = begin; i < end; ++i)
        ones += x[i];
    const std::size_t n = end - begin;
    if (n == 0 || ones == 0 || ones == n)
        return 0.0;
    const double q = double(ones) / double(n);
    return double(n) * (-q * std::log2(q) - (1 - q) * std::log2(1 - q));
}

inline BitSequence random_bits(std::size_t n, std::uint64_t seed, double p1 = 0.5) {
    SplitMix64 rng(seed);
    BitSequence x;
    for (std::size_t i = 0; i < n; ++i)
        x.push_back(double(rng.next() >> 11) * 0x1.0p-53 < p1);
    return x;
}

} // namespace esp::test
