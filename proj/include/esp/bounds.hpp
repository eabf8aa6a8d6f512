#pragma once

#include <cstdint>
#include <span>

#include "esp/bitseq.hpp"
#include "esp/estimator.hpp"
#include "esp/schedule.hpp"

namespace esp {

// Inputs shared by the closed-form redundancy bounds. p_min plays the role
// of the smaller prior probability min(p(0), p(1)).
struct BoundInput {
    std::uint64_t n = 0;
    std::uint64_t segments = 1;
    double p_min = 0.5;
    double alpha = 0.0;    // fixed kind
    double lambda = 0.0;   // count kind
    std::uint32_t m = 1;   // count kind
};

// Worst-case redundancy bound against the empirical entropy of the whole
// sequence, with separate branches for deterministic and other inputs.
// log2_betas must hold log2 beta_0 .. log2 beta_{n-1}; p_top is the larger
// prior probability max(p(0), p(1)).
double redundancy_bound(std::span<const double> log2_betas, std::uint64_t n,
                      double p_top, bool deterministic);

// Redundancy bound against the best piecewise stationary code for the given
// partition; log2_betas as above with n = partition.length().
double pws_redundancy_bound(std::span<const double> log2_betas, const Partition& partition,
                      double p_min);

// (pi log2 e)^2 / (6 log2(1/alpha)): upper bound on every partial sum
// sum_{1<=i<=m} log2 1/(1 - alpha^i).
double logsum_bound(double alpha);

// Closed-form per-kind weakenings of pws_redundancy_bound:
//   Fixed:    s [ log2 1/p_min + logsum_bound(alpha) + (n-1) log2 1/alpha ]
//   Decaying: s [ log2 1/p_min + (2 pi log2 e / sqrt 3) sqrt n ]
//   Count:    s [ log2 n/p_min + logsum_bound(lambda) + (n-1) log2 1/lambda ]
double closed_form_bound(ScheduleKind kind, const BoundInput& input);

// Fixed-rate bound with the rate optimized for n:
// s [ (2 pi log2 e / sqrt 6) sqrt n + log2 1/p_min ].
double optimal_alpha_bound(std::uint64_t n, std::uint64_t segments, double p_min);

// Redundancy (code length minus empirical entropy) of the two candidate
// worst-case inputs: the all-majority sequence and the sequence with a
// single minority letter in the last position. Letters are oriented by the
// prior: with p(0) <= p(1) the candidates are 0^n and 0^{n-1}1, otherwise
// their complements.
struct WorstCaseCandidates {
    double all_same_redundancy;    // redundancy of the deterministic candidate
    double single_flip_redundancy; // redundancy of the single-flip candidate
    BitSequence argmax;            // the larger of the two
    double redundancy;             // its redundancy
};
WorstCaseCandidates worst_case_candidates(const SmoothingSchedule& sched,
                                          double prior_p1, std::uint64_t n);

// Brute-force maxima over every length-n bit sequence. Capped at n <= 20.
// With workers > 1 the range is fanned out; results are identical to the
// sequential scan (ties keep the lowest sequence index).
struct ExhaustiveResult {
    double max_redundancy;
    BitSequence argmax;
    double max_deterministic;    // max over the two deterministic inputs
    double max_nondeterministic; // max over all other inputs (-inf if n < 2)
};
ExhaustiveResult exhaustive_worst_case(const SmoothingSchedule& sched, double prior_p1,
                                       unsigned n, unsigned workers = 1);

// Brute-force max of code length minus pws_baseline over every sequence of
// length partition.length().
ExhaustiveResult exhaustive_worst_case_pws(const SmoothingSchedule& sched,
                                           double prior_p1, const Partition& partition,
                                           unsigned workers = 1);

} // namespace esp
