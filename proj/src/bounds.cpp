#include "esp/bounds.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <vector>

namespace esp {

namespace {

constexpr double kLog2E = std::numbers::log2e;
constexpr unsigned kExhaustiveCap = 20;

// n H(1/n) computed as the empirical entropy of 0^{n-1}1.
double single_flip_entropy(std::uint64_t n) {
    BitSequence x = BitSequence::zeros(n);
    x.set(n - 1, true);
    return empirical_entropy(x);
}

BitSequence sequence_from_index(std::uint64_t u, unsigned n) {
    BitSequence x;
    for (unsigned i = 0; i < n; ++i)
        x.push_back((u >> i) & 1u);
    return x;
}

} // namespace

double redundancy_bound(std::span<const double> log2_betas, std::uint64_t n,
                      double p_top, bool deterministic) {
    if (log2_betas.size() < n)
        throw std::invalid_argument("beta sequence shorter than n");
    if (!(p_top > 0.0 && p_top < 1.0))
        throw std::invalid_argument("p_top must lie in (0,1)");
    if (n == 0)
        return 0.0;
    if (deterministic) {
        double sum = 0.0;
        for (std::uint64_t i = 0; i < n; ++i)
            sum -= std::log2(1.0 - p_top * std::exp2(log2_betas[i]));
        return sum;
    }
    if (n < 2)
        throw std::invalid_argument("non-deterministic bound needs n >= 2");
    double sum = -std::log2(p_top) - log2_betas[n - 1];
    for (std::uint64_t i = 0; i + 1 < n; ++i)
        sum -= std::log2(1.0 - p_top * std::exp2(log2_betas[i]));
    return sum - single_flip_entropy(n);
}

double pws_redundancy_bound(std::span<const double> log2_betas, const Partition& partition,
                      double p_min) {
    const std::uint64_t n = partition.length();
    if (log2_betas.size() < n)
        throw std::invalid_argument("beta sequence shorter than n");
    if (!(p_min > 0.0 && p_min <= 0.5))
        throw std::invalid_argument("p_min must lie in (0, 1/2]");
    double sum = double(partition.segments()) * (-std::log2(p_min) - log2_betas[n - 1]);
    for (std::size_t k = 0; k < partition.segments(); ++k) {
        auto [a, b] = partition.segment(k);
        for (std::uint64_t i = a + 1; i < b; ++i)
            sum -= std::log2(1.0 - std::exp2(log2_betas[i] - log2_betas[a]));
    }
    return sum;
}

double logsum_bound(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("rate must lie in (0,1)");
    const double c = std::numbers::pi * kLog2E;
    return c * c / (6.0 * std::log2(1.0 / alpha));
}

double closed_form_bound(ScheduleKind kind, const BoundInput& input) {
    if (!(input.p_min > 0.0 && input.p_min <= 0.5))
        throw std::invalid_argument("p_min must lie in (0, 1/2]");
    if (input.n < 1 || input.segments < 1)
        throw std::invalid_argument("need n >= 1 and at least one segment");
    const double s = double(input.segments);
    const double n = double(input.n);
    switch (kind) {
    case ScheduleKind::Fixed: {
        if (!(input.alpha > 0.0 && input.alpha < 1.0))
            throw std::invalid_argument("fixed bound needs alpha in (0,1)");
        return s * (std::log2(1.0 / input.p_min) + logsum_bound(input.alpha) +
                    (n - 1.0) * std::log2(1.0 / input.alpha));
    }
    case ScheduleKind::Decaying:
        return s * (std::log2(1.0 / input.p_min) +
                    2.0 * std::numbers::pi * kLog2E / std::sqrt(3.0) * std::sqrt(n));
    case ScheduleKind::Count: {
        if (!(input.lambda > 0.0 && input.lambda < 1.0))
            throw std::invalid_argument("count bound needs lambda in (0,1)");
        return s * (std::log2(n / input.p_min) + logsum_bound(input.lambda) +
                    (n - 1.0) * std::log2(1.0 / input.lambda));
    }
    }
    throw std::logic_error("unreachable");
}

double optimal_alpha_bound(std::uint64_t n, std::uint64_t segments, double p_min) {
    if (!(p_min > 0.0 && p_min <= 0.5))
        throw std::invalid_argument("p_min must lie in (0, 1/2]");
    const double c = 2.0 * std::numbers::pi * kLog2E / std::sqrt(6.0);
    return double(segments) * (c * std::sqrt(double(n)) + std::log2(1.0 / p_min));
}

WorstCaseCandidates worst_case_candidates(const SmoothingSchedule& sched,
                                          double prior_p1, std::uint64_t n) {
    if (n == 0)
        throw std::invalid_argument("worst case needs n >= 1");
    const bool majority_is_zero = (1.0 - prior_p1) <= prior_p1;

    BitSequence all_same = BitSequence::zeros(n);
    BitSequence single_flip = BitSequence::zeros(n);
    if (!majority_is_zero) {
        all_same = all_same.complement();
        single_flip = single_flip.complement();
    }
    single_flip.set(n - 1, !single_flip[n - 1]);

    Estimator a(sched, prior_p1);
    const double red_same = a.process(all_same); // h = 0 for deterministic input

    Estimator b(sched, prior_p1);
    const double red_flip = b.process(single_flip) - empirical_entropy(single_flip);

    WorstCaseCandidates out{red_same, red_flip, all_same, red_same};
    if (red_flip > red_same) {
        out.argmax = single_flip;
        out.redundancy = red_flip;
    }
    return out;
}

namespace {

struct ScanState {
    double max_red = -std::numeric_limits<double>::infinity();
    std::uint64_t argmax_index = 0;
    double max_det = -std::numeric_limits<double>::infinity();
    double max_nondet = -std::numeric_limits<double>::infinity();
};

void merge_into(ScanState& acc, const ScanState& local) {
    if (local.max_red > acc.max_red) {
        acc.max_red = local.max_red;
        acc.argmax_index = local.argmax_index;
    }
    if (local.max_det > acc.max_det)
        acc.max_det = local.max_det;
    if (local.max_nondet > acc.max_nondet)
        acc.max_nondet = local.max_nondet;
}

// Scan sequence indices [lo, hi); Baseline(u) yields the competitor cost.
template <typename Baseline>
ScanState scan_range(const SmoothingSchedule& sched, double prior_p1, unsigned n,
                     std::uint64_t lo, std::uint64_t hi, Baseline&& baseline) {
    ScanState st;
    const std::uint64_t det_hi = (std::uint64_t(1) << n) - 1;
    for (std::uint64_t u = lo; u < hi; ++u) {
        Estimator est(sched, prior_p1);
        for (unsigned i = 0; i < n; ++i)
            est.update((u >> i) & 1u);
        const double red = est.code_length() - baseline(u);
        const bool det = (u == 0 || u == det_hi);
        if (det) {
            if (red > st.max_det) st.max_det = red;
        } else {
            if (red > st.max_nondet) st.max_nondet = red;
        }
        if (red > st.max_red) {
            st.max_red = red;
            st.argmax_index = u;
        }
    }
    return st;
}

template <typename Baseline>
ExhaustiveResult exhaustive_scan(const SmoothingSchedule& sched, double prior_p1,
                                 unsigned n, unsigned workers, Baseline&& baseline) {
    if (n == 0 || n > kExhaustiveCap)
        throw std::invalid_argument("exhaustive scan supports 1 <= n <= 20");
    const std::uint64_t total = std::uint64_t(1) << n;

    ScanState acc;
    if (workers <= 1) {
        acc = scan_range(sched, prior_p1, n, 0, total, baseline);
    } else {
        const unsigned w = std::min<std::uint64_t>(workers, total);
        std::vector<ScanState> parts(w);
        std::vector<std::thread> threads;
        threads.reserve(w);
        for (unsigned t = 0; t < w; ++t) {
            const std::uint64_t lo = total * t / w;
            const std::uint64_t hi = total * (t + 1) / w;
            threads.emplace_back([&, t, lo, hi] {
                parts[t] = scan_range(sched, prior_p1, n, lo, hi, baseline);
            });
        }
        for (auto& th : threads)
            th.join();
        for (const auto& part : parts)
            merge_into(acc, part);
    }

    return {acc.max_red, sequence_from_index(acc.argmax_index, n), acc.max_det,
            acc.max_nondet};
}

} // namespace

ExhaustiveResult exhaustive_worst_case(const SmoothingSchedule& sched, double prior_p1,
                                       unsigned n, unsigned workers) {
    const double dn = double(n);
    return exhaustive_scan(sched, prior_p1, n, workers, [&](std::uint64_t u) {
        return dn * binary_entropy(double(std::popcount(u)) / dn);
    });
}

ExhaustiveResult exhaustive_worst_case_pws(const SmoothingSchedule& sched,
                                           double prior_p1, const Partition& partition,
                                           unsigned workers) {
    const std::uint64_t n = partition.length();
    if (n > kExhaustiveCap)
        throw std::invalid_argument("exhaustive scan supports n <= 20");
    // per-segment masks so the baseline is a few popcounts
    struct Seg { std::uint64_t mask; double len; };
    std::vector<Seg> segs;
    segs.reserve(partition.segments());
    for (std::size_t k = 0; k < partition.segments(); ++k) {
        auto [a, b] = partition.segment(k);
        const std::uint64_t width = b - a;
        const std::uint64_t mask =
            (width == 64 ? ~std::uint64_t(0) : ((std::uint64_t(1) << width) - 1)) << a;
        segs.push_back({mask, double(width)});
    }
    return exhaustive_scan(sched, prior_p1, unsigned(n), workers, [&](std::uint64_t u) {
        double h = 0.0;
        for (const auto& s : segs)
            h += s.len * binary_entropy(double(std::popcount(u & s.mask)) / s.len);
        return h;
    });
}

} // namespace esp
