#include "esp/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <system_error>
#include <thread>

namespace esp {

std::vector<double> ExperimentConfig::default_grid(double step, double lo, double hi) {
    std::vector<double> grid;
    for (int j = 0;; ++j) {
        const double q = lo + step * j;
        if (q > hi + 1e-9)
            break;
        grid.push_back(q);
    }
    return grid;
}

SmoothingSchedule ExperimentConfig::schedule() const {
    switch (kind) {
    case ScheduleKind::Fixed:
        return SmoothingSchedule::fixed(alpha > 0.0 ? alpha : optimal_fixed_alpha(n));
    case ScheduleKind::Decaying:
        return SmoothingSchedule::decaying();
    case ScheduleKind::Count:
        return SmoothingSchedule::count_smoothing(
            lambda > 0.0 ? lambda : optimal_fixed_alpha(n), m);
    }
    throw std::logic_error("unreachable");
}

std::uint64_t ExperimentConfig::combinations() const {
    const std::size_t s = boundaries.size() - 1;
    std::uint64_t combos = 1;
    for (std::size_t i = 0; i < s + 1; ++i)
        combos *= grid().size();
    return combos;
}

std::uint64_t ExperimentConfig::total_simulations() const {
    return combinations() * repeats;
}

void ExperimentConfig::validate() const {
    const Partition part(boundaries); // validates shape
    if (part.length() != n)
        throw std::invalid_argument("partition must cover [1, n]");
    if (!(eps > 0.0 && eps < 0.5))
        throw std::invalid_argument("eps must lie in (0, 1/2)");
    if (repeats < 1)
        throw std::invalid_argument("need at least one repeat");
    for (double q : grid())
        if (q < eps - 1e-9 || q > 1.0 - eps + 1e-9)
            throw std::invalid_argument("grid fractions must lie in [eps, 1-eps]");
    schedule(); // validates parameters
}

BitSequence sample_sequence(const Partition& partition, std::span<const double> fractions,
                            SplitMix64& rng) {
    if (fractions.size() != partition.segments())
        throw std::invalid_argument("one fraction per segment required");
    std::vector<std::uint8_t> bits(partition.length(), 0);
    for (std::size_t k = 0; k < partition.segments(); ++k) {
        if (!(fractions[k] >= 0.0 && fractions[k] <= 1.0))
            throw std::invalid_argument("fraction outside [0,1]");
        auto [a, b] = partition.segment(k);
        const std::uint64_t len = b - a;
        // floor with a nudge: grid fractions are decimal and their binary
        // representation may land epsilon under an exact integer product
        const auto ones = std::min(
            len, std::uint64_t(std::floor(fractions[k] * double(len) + 1e-9)));
        std::fill_n(bits.begin() + a, ones, std::uint8_t(1));
        // Fisher-Yates within the segment
        for (std::uint64_t i = len; i > 1; --i) {
            const std::uint64_t j = rng.bounded(i);
            std::swap(bits[a + i - 1], bits[a + j]);
        }
    }
    BitSequence x;
    for (std::uint8_t bit : bits)
        x.push_back(bit != 0);
    return x;
}

std::vector<double> prefix_redundancy_trace(Estimator& est, const BitSequence& x,
                                            const Partition& partition) {
    if (partition.length() != x.size())
        throw std::invalid_argument("partition must cover the sequence");
    std::vector<double> trace(x.size());
    std::size_t seg = 0;
    double done_h = 0.0;     // entropy of completed segments
    std::uint64_t seg_ones = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const bool bit = x[i];
        est.update(bit);
        if (i == partition.segment(seg).second) { // crossed into the next segment
            auto [a, b] = partition.segment(seg);
            done_h += double(b - a) * binary_entropy(double(seg_ones) / double(b - a));
            ++seg;
            seg_ones = 0;
        }
        seg_ones += bit;
        const auto [a, b] = partition.segment(seg);
        const double len = double(i + 1 - a);
        const double partial_h = len * binary_entropy(double(seg_ones) / len);
        trace[i] = est.code_length() - (done_h + partial_h);
    }
    return trace;
}

double class_bound_at(ScheduleKind kind, std::uint64_t k, std::uint64_t segments,
                      double eps, double lambda_n) {
    // the class floor eps simply takes the place of p_min in the closed forms
    BoundInput in;
    in.n = k;
    in.segments = segments;
    in.p_min = eps;
    switch (kind) {
    case ScheduleKind::Fixed:
        // optimized-rate form at prefix length k, with the sqrt over k-1 steps
        return optimal_alpha_bound(k - 1, segments, eps);
    case ScheduleKind::Decaying:
        return closed_form_bound(kind, in);
    case ScheduleKind::Count:
        in.lambda = lambda_n;
        return closed_form_bound(kind, in);
    }
    throw std::logic_error("unreachable");
}

namespace {

// Stream key of a combination: hash of the fraction tuple (q_0 .. q_s) at
// nano resolution. Keying on the values rather than the combo index means a
// refined grid or extra repeats replay the exact simulations of a coarser
// run and only add new ones.
std::uint64_t combo_key(double q0, std::span<const double> fractions) {
    std::uint64_t key = mix64(std::uint64_t(std::llround(q0 * 1e9)) + 1);
    for (double q : fractions)
        key = mix64(key ^ (0x9E3779B97F4A7C15ULL *
                           (std::uint64_t(std::llround(q * 1e9)) + 1)));
    return key;
}

// One worker's share: fold the pointwise max over a contiguous combo range.
void run_combos(const ExperimentConfig& config, const Partition& partition,
                const std::vector<double>& grid, const SmoothingSchedule& sched,
                std::uint64_t combo_lo, std::uint64_t combo_hi,
                std::vector<double>& r_max) {
    const std::size_t s = partition.segments();
    std::vector<double> fractions(s);
    for (std::uint64_t combo = combo_lo; combo < combo_hi; ++combo) {
        // mixed-radix digits of the combo index: most significant digit is
        // the prior fraction q_0, then q_1 .. q_s left to right
        std::uint64_t rest = combo;
        std::uint64_t scale = 1;
        for (std::size_t i = 0; i < s; ++i)
            scale *= grid.size();
        const double q0 = grid[rest / scale];
        rest %= scale;
        for (std::size_t i = 0; i < s; ++i) {
            scale /= grid.size();
            fractions[i] = grid[rest / scale];
            rest %= scale;
        }
        const double prior_p1 = 1.0 - q0;
        const std::uint64_t key = combo_key(q0, fractions);
        for (unsigned rep = 0; rep < config.repeats; ++rep) {
            SplitMix64 rng = stream_rng(config.rng_seed, key, rep);
            const BitSequence x = sample_sequence(partition, fractions, rng);
            Estimator est(sched, prior_p1);
            const std::vector<double> trace = prefix_redundancy_trace(est, x, partition);
            for (std::size_t i = 0; i < trace.size(); ++i)
                r_max[i] = std::max(r_max[i], trace[i]);
        }
    }
}

} // namespace

RedundancyCurve run(const ExperimentConfig& config) {
    config.validate();
    const Partition partition(config.boundaries);
    const std::vector<double> grid = config.grid();
    const SmoothingSchedule sched = config.schedule();
    const std::uint64_t combos = config.combinations();

    RedundancyCurve curve;
    curve.r_measured.assign(config.n, -std::numeric_limits<double>::infinity());

    const unsigned workers =
        std::max(1u, std::min<unsigned>(config.workers, unsigned(combos)));
    if (workers == 1) {
        run_combos(config, partition, grid, sched, 0, combos, curve.r_measured);
    } else {
        std::vector<std::vector<double>> parts(
            workers, std::vector<double>(config.n,
                                         -std::numeric_limits<double>::infinity()));
        std::vector<std::thread> threads;
        threads.reserve(workers);
        for (unsigned t = 0; t < workers; ++t) {
            const std::uint64_t lo = combos * t / workers;
            const std::uint64_t hi = combos * (t + 1) / workers;
            threads.emplace_back([&, t, lo, hi] {
                run_combos(config, partition, grid, sched, lo, hi, parts[t]);
            });
        }
        for (auto& th : threads)
            th.join();
        for (const auto& part : parts)
            for (std::size_t i = 0; i < curve.r_measured.size(); ++i)
                curve.r_measured[i] = std::max(curve.r_measured[i], part[i]);
    }

    const double lambda_n = config.kind == ScheduleKind::Count
                                ? (config.lambda > 0.0 ? config.lambda
                                                       : optimal_fixed_alpha(config.n))
                                : 0.0;
    curve.bound.resize(config.n);
    for (std::uint64_t k = 1; k <= config.n; ++k)
        curve.bound[k - 1] =
            class_bound_at(config.kind, k, partition.segments(), config.eps, lambda_n);
    return curve;
}

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const { std::fclose(f); }
};

void write_all(const std::string& path, const std::string& text) {
    std::unique_ptr<std::FILE, FileCloser> f(std::fopen(path.c_str(), "wb"));
    if (!f)
        throw std::system_error(errno, std::generic_category(),
                                "cannot open " + path + " for writing");
    if (std::fwrite(text.data(), 1, text.size(), f.get()) != text.size())
        throw std::system_error(errno, std::generic_category(), "short write to " + path);
}

void append_row(std::string& out, std::uint64_t k, const double* r, double bound) {
    char buf[96];
    int len;
    if (r)
        len = std::snprintf(buf, sizeof buf, "%llu,%.9g,%.9g\n",
                            static_cast<unsigned long long>(k), *r, bound);
    else
        len = std::snprintf(buf, sizeof buf, "%llu,%.9g\n",
                            static_cast<unsigned long long>(k), bound);
    out.append(buf, std::size_t(len));
}

} // namespace

void emit_csv(const RedundancyCurve& curve, const std::string& path) {
    if (curve.r_measured.size() != curve.bound.size())
        throw std::invalid_argument("curve columns disagree in length");
    std::string text = "k,r_measured_bits,bound_bits\n";
    for (std::size_t i = 0; i < curve.r_measured.size(); ++i)
        append_row(text, i + 1, &curve.r_measured[i], curve.bound[i]);
    write_all(path, text);
}

void emit_bound_csv(std::span<const double> bound, const std::string& path) {
    std::string text = "k,bound_bits\n";
    for (std::size_t i = 0; i < bound.size(); ++i)
        append_row(text, i + 1, nullptr, bound[i]);
    write_all(path, text);
}

} // namespace esp
