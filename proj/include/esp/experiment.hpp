#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "esp/bitseq.hpp"
#include "esp/bounds.hpp"
#include "esp/estimator.hpp"
#include "esp/rng.hpp"
#include "esp/schedule.hpp"

namespace esp {

// Worst-case redundancy study: sample inputs with prescribed per-segment
// 1-bit fractions, run an estimator per prior on the grid, and keep the
// pointwise maximum prefix redundancy against the per-segment entropy
// baseline, next to the matching class bound.
struct ExperimentConfig {
    std::uint64_t n = 1000;
    std::vector<std::uint64_t> boundaries = {0, 200, 700, 1000};
    double eps = 0.05;
    std::vector<double> q_grid;  // empty -> default_grid(0.05)
    unsigned repeats = 100;
    ScheduleKind kind = ScheduleKind::Fixed;
    double alpha = 0.0;   // fixed kind; 0 -> optimal_fixed_alpha(n)
    double lambda = 0.0;  // count kind; 0 -> optimal_fixed_alpha(n)
    std::uint32_t m = 1;  // count kind
    std::uint64_t rng_seed = 0;
    unsigned workers = 1;

    static std::vector<double> default_grid(double step = 0.05, double lo = 0.05,
                                            double hi = 0.95);

    Partition partition() const { return Partition(boundaries); }
    std::vector<double> grid() const {
        return q_grid.empty() ? default_grid() : q_grid;
    }
    SmoothingSchedule schedule() const;
    std::uint64_t combinations() const;      // |grid|^(segments+1)
    std::uint64_t total_simulations() const; // combinations * repeats
    void validate() const;                   // throws on invariant violations
};

struct RedundancyCurve {
    std::vector<double> r_measured; // index k-1 holds r(k), k = 1..n
    std::vector<double> bound;      // class bound at prefix length k
};

// Per-segment exact-count sample: segment i of length L gets floor(q_i L)
// 1-bits, uniformly placed via a seeded in-segment shuffle.
BitSequence sample_sequence(const Partition& partition, std::span<const double> fractions,
                            SplitMix64& rng);

// r(k) for one estimator and one input: accumulated code length minus the
// per-segment entropy baseline truncated at k (the active segment is scored
// on its prefix).
std::vector<double> prefix_redundancy_trace(Estimator& est, const BitSequence& x,
                                            const Partition& partition);

// Class bound at prefix length k with the prior term replaced by eps.
// lambda_n is the count-kind rate (frozen for the configured n).
double class_bound_at(ScheduleKind kind, std::uint64_t k, std::uint64_t segments,
                      double eps, double lambda_n);

RedundancyCurve run(const ExperimentConfig& config);

// CSV with header k,r_measured_bits,bound_bits; 9 significant digits, LF.
void emit_csv(const RedundancyCurve& curve, const std::string& path);

// Bound-only CSV (header k,bound_bits), shared schema for the bounds CLI.
void emit_bound_csv(std::span<const double> bound, const std::string& path);

} // namespace esp
