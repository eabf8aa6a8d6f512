// Command line front end: compress/decompress files with the smoothing
// estimator, print redundancy bounds, and run the redundancy experiment.

#include <CLI11.hpp>

#include <cinttypes>
#include <fstream>
#include <cstdio>
#include <memory>
#include <string>
#include <system_error>
#include <vector>

#include "esp/bounds.hpp"
#include "esp/codec.hpp"
#include "esp/experiment.hpp"

namespace {

using namespace esp;

struct FileCloser {
    void operator()(std::FILE* f) const { std::fclose(f); }
};
using File = std::unique_ptr<std::FILE, FileCloser>;

std::vector<std::uint8_t> read_file(const std::string& path) {
    File f(std::fopen(path.c_str(), "rb"));
    if (!f)
        throw std::system_error(errno, std::generic_category(), "cannot open " + path);
    std::vector<std::uint8_t> data;
    std::uint8_t buf[1 << 16];
    std::size_t got;
    while ((got = std::fread(buf, 1, sizeof buf, f.get())) > 0)
        data.insert(data.end(), buf, buf + got);
    if (std::ferror(f.get()))
        throw std::system_error(errno, std::generic_category(), "cannot read " + path);
    return data;
}

void write_file(const std::string& path, const std::vector<std::uint8_t>& data) {
    File f(std::fopen(path.c_str(), "wb"));
    if (!f)
        throw std::system_error(errno, std::generic_category(), "cannot open " + path);
    if (std::fwrite(data.data(), 1, data.size(), f.get()) != data.size())
        throw std::system_error(errno, std::generic_category(), "cannot write " + path);
}

std::vector<std::uint64_t> parse_boundaries(const std::string& text) {
    std::vector<std::uint64_t> bounds{0};
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t used = 0;
        const auto value = std::stoull(text.substr(pos), &used);
        bounds.push_back(value);
        pos += used;
        if (pos < text.size()) {
            if (text[pos] != ',')
                throw std::invalid_argument("partition must be comma-separated numbers");
            ++pos;
        }
    }
    return bounds;
}

ScheduleKind parse_kind(const std::string& name) {
    if (name == "fixed")
        return ScheduleKind::Fixed;
    if (name == "decaying")
        return ScheduleKind::Decaying;
    if (name == "count")
        return ScheduleKind::Count;
    throw std::invalid_argument("schedule must be fixed, decaying or count");
}

void warn_assumption1(const SmoothingSchedule& sched) {
    if (!sched.assumption1_satisfied())
        std::fprintf(stderr,
                     "warning: assumption 1 violated, smoothing rate alpha_1 = %.6f "
                     "<= 1/2; redundancy bounds do not apply\n",
                     sched.rate_at(1));
}

SmoothingSchedule build_schedule(ScheduleKind kind, double alpha, double lambda,
                                 std::uint32_t m, std::uint64_t n_for_auto) {
    const std::uint64_t n = std::max<std::uint64_t>(2, n_for_auto);
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

int run_cli(int argc, char** argv) {
    CLI::App app{"binary sequence compression by exponential smoothing of "
                 "probabilities"};
    app.require_subcommand(1);

    // compress
    auto* compress = app.add_subcommand("compress", "compress a file");
    std::string in_path, out_path, schedule_name = "fixed";
    double alpha = 0.0, lambda = 0.0, prior = 0.5;
    std::uint32_t m = 1;
    bool auto_n = false;
    compress->add_option("input", in_path, "input file")->required();
    compress->add_option("output", out_path, "output file")->required();
    compress->add_option("--schedule", schedule_name, "fixed, decaying or count");
    auto* alpha_opt = compress->add_option("--alpha", alpha, "fixed smoothing rate");
    auto* lambda_opt = compress->add_option("--lambda", lambda, "count smoothing rate");
    compress->add_option("--m", m, "count smoothing initial weight");
    compress->add_option("--prior", prior, "prior probability of a 1-bit");
    auto* auto_opt = compress->add_flag(
        "--auto-n", auto_n, "tune the rate to the input length (default when no "
                            "rate is given)");
    auto_opt->excludes(alpha_opt);
    auto_opt->excludes(lambda_opt);
    compress->callback([&] {
        const auto kind = parse_kind(schedule_name);
        const auto data = read_file(in_path);
        const auto sched =
            build_schedule(kind, alpha, lambda, m, 8 * std::uint64_t(data.size()));
        warn_assumption1(sched);
        const auto result = compress_bytes(data, sched, prior);
        write_file(out_path, result.bytes);
        std::printf("original bits: %" PRIu64 "\n", 8 * std::uint64_t(data.size()));
        std::printf("payload bits:  %" PRIu64 "\n", payload_bits(result.bytes));
        std::printf("ideal bits:    %.3f\n", result.ideal_code_length);
    });

    // decompress
    auto* decompress = app.add_subcommand("decompress", "restore a compressed file");
    std::string din_path, dout_path;
    decompress->add_option("input", din_path, "compressed file")->required();
    decompress->add_option("output", dout_path, "output file")->required();
    decompress->callback([&] {
        const auto container = read_file(din_path);
        const auto data = decompress_bytes(container);
        write_file(dout_path, data);
        std::printf("restored bits: %" PRIu64 "\n", 8 * std::uint64_t(data.size()));
    });

    // bounds
    auto* bounds = app.add_subcommand("bounds", "print redundancy bounds");
    std::string b_schedule = "fixed", b_csv;
    std::uint64_t b_n = 0, b_segments = 1;
    double b_pmin = 0.5, b_alpha = 0.0, b_lambda = 0.0;
    bounds->add_option("--schedule", b_schedule, "fixed, decaying or count");
    bounds->add_option("--n", b_n, "sequence length")->required();
    bounds->add_option("--segments", b_segments, "competitor segments |S|");
    bounds->add_option("--pmin", b_pmin, "smaller prior probability, in (0, 1/2]");
    bounds->add_option("--alpha", b_alpha, "fixed smoothing rate (default: tuned)");
    bounds->add_option("--lambda", b_lambda, "count smoothing rate (default: tuned)");
    bounds->add_option("--csv", b_csv, "write the per-prefix bound curve here");
    bounds->callback([&] {
        const auto kind = parse_kind(b_schedule);
        if (!(b_pmin > 0.0 && b_pmin <= 0.5))
            throw std::invalid_argument("p_min must lie in (0, 1/2]");
        if (b_n < 1)
            throw std::invalid_argument("need n >= 1");
        BoundInput in;
        in.n = b_n;
        in.segments = b_segments;
        in.p_min = b_pmin;
        double value = 0.0;
        const bool auto_rate =
            (kind == ScheduleKind::Fixed && b_alpha <= 0.0) ||
            (kind == ScheduleKind::Count && b_lambda <= 0.0);
        switch (kind) {
        case ScheduleKind::Fixed:
            if (auto_rate) {
                value = optimal_alpha_bound(b_n, b_segments, b_pmin);
                std::printf("alpha: %.6f (tuned for n)\n",
                            optimal_fixed_alpha(std::max<std::uint64_t>(2, b_n)));
            } else {
                in.alpha = b_alpha;
                value = closed_form_bound(kind, in);
            }
            break;
        case ScheduleKind::Decaying:
            value = closed_form_bound(kind, in);
            break;
        case ScheduleKind::Count:
            in.lambda = auto_rate ? optimal_fixed_alpha(std::max<std::uint64_t>(2, b_n))
                                  : b_lambda;
            if (auto_rate)
                std::printf("lambda: %.6f (tuned for n)\n", in.lambda);
            value = closed_form_bound(kind, in);
            break;
        }
        std::printf("bound: %.4f bits\n", value);
        if (!b_csv.empty()) {
            std::vector<double> curve(b_n);
            for (std::uint64_t k = 1; k <= b_n; ++k) {
                BoundInput at = in;
                at.n = k;
                switch (kind) {
                case ScheduleKind::Fixed:
                    curve[k - 1] = auto_rate ? optimal_alpha_bound(k, b_segments, b_pmin)
                                             : closed_form_bound(kind, at);
                    break;
                default:
                    curve[k - 1] = closed_form_bound(kind, at);
                    break;
                }
            }
            emit_bound_csv(curve, b_csv);
            std::printf("wrote: %s\n", b_csv.c_str());
        }
    });

    // simulate
    auto* simulate = app.add_subcommand("simulate", "worst-case redundancy study");
    std::string s_config;
    simulate->add_option("--config", s_config,
                         "key=value file with these option names; command line "
                         "flags win");
    std::uint64_t s_n = 1000, s_seed = 0;
    std::string s_partition = "200,700,1000", s_schedule = "fixed", s_out;
    double s_eps = 0.05, s_qstep = 0.15, s_alpha = 0.0, s_lambda = 0.0;
    unsigned s_repeats = 10, s_workers = 2;
    std::uint32_t s_m = 1;
    bool s_full = false;
    simulate->add_option("--n", s_n, "sequence length");
    simulate->add_option("--partition", s_partition, "segment ends, e.g. 200,700,1000");
    simulate->add_option("--eps", s_eps, "class floor for prior and fractions");
    simulate->add_option("--qstep", s_qstep, "fraction grid step");
    simulate->add_option("--repeats", s_repeats, "random repeats per combination");
    simulate->add_option("--schedule", s_schedule, "fixed, decaying or count");
    simulate->add_option("--alpha", s_alpha, "fixed rate (default: tuned for n)");
    simulate->add_option("--lambda", s_lambda, "count rate (default: tuned for n)");
    simulate->add_option("--m", s_m, "count smoothing initial weight");
    simulate->add_option("--seed", s_seed, "random seed");
    simulate->add_option("--workers", s_workers, "parallel workers");
    simulate->add_flag("--full", s_full,
                       "paper-scale run: grid step 0.05 and 100 repeats");
    simulate->add_option("--out", s_out, "curve CSV path");
    simulate->callback([&] {
        if (!s_config.empty()) {
            std::ifstream file(s_config);
            if (!file)
                throw std::system_error(errno, std::generic_category(),
                                        "cannot open " + s_config);
            std::string line;
            int lineno = 0;
            while (std::getline(file, line)) {
                ++lineno;
                const auto start = line.find_first_not_of(" \t");
                if (start == std::string::npos || line[start] == '#')
                    continue;
                const auto eq = line.find('=');
                if (eq == std::string::npos)
                    throw std::invalid_argument(s_config + ":" +
                                                std::to_string(lineno) +
                                                ": expected key=value");
                const std::string key = line.substr(start, eq - start);
                const std::string value = line.substr(eq + 1);
                const auto given = [&](const char* flag) {
                    return simulate->count(flag) > 0;
                };
                if (key == "n" && !given("--n"))
                    s_n = std::stoull(value);
                else if (key == "partition" && !given("--partition"))
                    s_partition = value;
                else if (key == "eps" && !given("--eps"))
                    s_eps = std::stod(value);
                else if (key == "qstep" && !given("--qstep"))
                    s_qstep = std::stod(value);
                else if (key == "repeats" && !given("--repeats"))
                    s_repeats = unsigned(std::stoul(value));
                else if (key == "schedule" && !given("--schedule"))
                    s_schedule = value;
                else if (key == "alpha" && !given("--alpha"))
                    s_alpha = std::stod(value);
                else if (key == "lambda" && !given("--lambda"))
                    s_lambda = std::stod(value);
                else if (key == "m" && !given("--m"))
                    s_m = std::uint32_t(std::stoul(value));
                else if (key == "seed" && !given("--seed"))
                    s_seed = std::stoull(value);
                else if (key == "workers" && !given("--workers"))
                    s_workers = unsigned(std::stoul(value));
                else if (key == "full" && !given("--full"))
                    s_full = value == "true" || value == "1";
                else if (key == "out" && !given("--out"))
                    s_out = value;
                else if (key != "n" && key != "partition" && key != "eps" &&
                         key != "qstep" && key != "repeats" && key != "schedule" &&
                         key != "alpha" && key != "lambda" && key != "m" &&
                         key != "seed" && key != "workers" && key != "full" &&
                         key != "out")
                    throw std::invalid_argument(s_config + ":" +
                                                std::to_string(lineno) +
                                                ": unknown key " + key);
            }
        }
        ExperimentConfig cfg;
        cfg.n = s_n;
        cfg.boundaries = parse_boundaries(s_partition);
        cfg.eps = s_eps;
        cfg.q_grid = ExperimentConfig::default_grid(s_full ? 0.05 : s_qstep, s_eps,
                                                    1.0 - s_eps);
        cfg.repeats = s_full ? 100 : s_repeats;
        cfg.kind = parse_kind(s_schedule);
        cfg.alpha = s_alpha;
        cfg.lambda = s_lambda;
        cfg.m = s_m;
        cfg.rng_seed = s_seed;
        cfg.workers = std::max(1u, s_workers);
        cfg.validate();
        warn_assumption1(cfg.schedule());
        std::printf("simulations: %" PRIu64 "\n", cfg.total_simulations());
        const auto curve = run(cfg);
        double max_r = curve.r_measured[0], max_b = curve.bound[0];
        std::size_t argmax_k = 1;
        bool dominated = true;
        for (std::size_t i = 0; i < curve.r_measured.size(); ++i) {
            if (curve.r_measured[i] > max_r) {
                max_r = curve.r_measured[i];
                argmax_k = i + 1;
            }
            max_b = std::max(max_b, curve.bound[i]);
            dominated = dominated && curve.r_measured[i] <= curve.bound[i];
        }
        std::printf("max r_measured: %.4f bits (k=%zu)\n", max_r, argmax_k);
        std::printf("max bound:      %.4f bits\n", max_b);
        std::printf("dominance: %s\n", dominated ? "true" : "false");
        if (!s_out.empty()) {
            emit_csv(curve, s_out);
            std::printf("wrote: %s\n", s_out.c_str());
        }
    });

    // entropy
    auto* entropy = app.add_subcommand("entropy", "empirical entropy of a file");
    std::string e_path, e_partition;
    entropy->add_option("input", e_path, "input file")->required();
    entropy->add_option("--partition", e_partition,
                        "segment ends in bits; sum per-segment entropies");
    entropy->callback([&] {
        const auto data = read_file(e_path);
        const auto x = BitSequence::from_bytes(data);
        std::printf("bits: %zu\n", x.size());
        std::printf("h: %.6f\n", empirical_entropy(x));
        if (x.empty() && e_partition.empty()) {
            std::printf("pws baseline: %.6f\n", 0.0);
            return;
        }
        const Partition part = e_partition.empty()
                                   ? Partition::single(x.size())
                                   : Partition(parse_boundaries(e_partition));
        std::printf("pws baseline: %.6f\n", pws_baseline(x, part));
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const std::system_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const esp::CodecError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
