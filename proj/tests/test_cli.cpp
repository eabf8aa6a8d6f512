#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "esp/rng.hpp"

namespace {

struct RunResult {
    int exit_code;
    std::string output; // stdout + stderr
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(ESP_CLI_PATH) + " " + args + " > cli_out.txt 2>&1";
    const int status = std::system(cmd.c_str());
    std::ifstream in("cli_out.txt", std::ios::binary);
    std::ostringstream text;
    text << in.rdbuf();
    return {WEXITSTATUS(status), text.str()};
}

void write_bytes(const std::string& path, const std::vector<unsigned char>& data) {
    std::ofstream out(path, std::ios::binary);
    out.write(reinterpret_cast<const char*>(data.data()),
              std::streamsize(data.size()));
}

std::vector<unsigned char> read_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream text;
    text << in.rdbuf();
    const std::string s = text.str();
    return {s.begin(), s.end()};
}

bool file_exists(const std::string& path) {
    std::ifstream in(path);
    return in.good();
}

std::vector<unsigned char> sample_corpus(int which) {
    switch (which) {
    case 0: { // text
        const std::string text =
            "the quick brown fox jumps over the lazy dog\n"
            "pack my box with five dozen liquor jugs\n";
        std::string repeated;
        for (int i = 0; i < 40; ++i)
            repeated += text;
        return {repeated.begin(), repeated.end()};
    }
    case 1: { // binary ramp with runs
        std::vector<unsigned char> data;
        for (int i = 0; i < 4096; ++i)
            data.push_back((unsigned char)(i / 16));
        return data;
    }
    default: { // already high-entropy
        std::vector<unsigned char> data;
        esp::SplitMix64 rng(99);
        for (int i = 0; i < 4096; ++i)
            data.push_back((unsigned char)rng.next());
        return data;
    }
    }
}

} // namespace

TEST_CASE("compress and decompress restore files byte for byte") {
    for (int which = 0; which < 3; ++which) {
        const auto data = sample_corpus(which);
        write_bytes("cli_in.bin", data);
        const std::string schedule =
            which == 0 ? "--schedule fixed --auto-n"
                       : (which == 1 ? "--schedule decaying"
                                     : "--schedule count --lambda 0.9 --m 2");
        const auto packed = run_cli("compress cli_in.bin cli_pack.bin " + schedule);
        CHECK(packed.exit_code == 0);
        CHECK(packed.output.find("original bits:") != std::string::npos);
        CHECK(packed.output.find("payload bits:") != std::string::npos);
        CHECK(packed.output.find("ideal bits:") != std::string::npos);

        const auto unpacked = run_cli("decompress cli_pack.bin cli_back.bin");
        CHECK(unpacked.exit_code == 0);
        CHECK(read_bytes("cli_back.bin") == data);
    }
    std::remove("cli_in.bin");
    std::remove("cli_pack.bin");
    std::remove("cli_back.bin");
}

TEST_CASE("compressing a zero run with a tuned rate is tiny") {
    write_bytes("cli_zero.bin", std::vector<unsigned char>(1 << 20, 0));
    const auto packed = run_cli("compress cli_zero.bin cli_zero.esp --auto-n");
    CHECK(packed.exit_code == 0);
    const auto original = read_bytes("cli_zero.bin").size();
    const auto container = read_bytes("cli_zero.esp").size();
    CHECK(container * 100 < original); // well under 1% of the input
    std::remove("cli_zero.bin");
    std::remove("cli_zero.esp");
}

TEST_CASE("count smoothing with m=1 warns about assumption 1") {
    write_bytes("cli_small.bin", sample_corpus(1));
    const auto r =
        run_cli("compress cli_small.bin cli_small.esp --schedule count "
                "--lambda 0.96 --m 1");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("assumption 1 violated") != std::string::npos);

    // m=2 with the same rate satisfies it
    const auto ok =
        run_cli("compress cli_small.bin cli_small.esp --schedule count "
                "--lambda 0.96 --m 2");
    CHECK(ok.exit_code == 0);
    CHECK(ok.output.find("assumption 1 violated") == std::string::npos);
    std::remove("cli_small.bin");
    std::remove("cli_small.esp");
}

TEST_CASE("missing input fails without creating output") {
    std::remove("cli_missing_out.bin");
    const auto r = run_cli("compress cli_no_such_file cli_missing_out.bin");
    CHECK(r.exit_code == 2);
    CHECK_FALSE(file_exists("cli_missing_out.bin"));
}

TEST_CASE("decompress rejects foreign files") {
    write_bytes("cli_junk.bin", {1, 2, 3, 4, 5, 6, 7, 8});
    const auto r = run_cli("decompress cli_junk.bin cli_junk_out.bin");
    CHECK(r.exit_code == 3);
    CHECK(r.output.find("not an ESP container") != std::string::npos);
    std::remove("cli_junk.bin");
}

TEST_CASE("usage errors exit with 1") {
    CHECK(run_cli("").exit_code == 1);
    CHECK(run_cli("compress").exit_code == 1);
    CHECK(run_cli("bounds --n 100 --no-such-flag").exit_code == 1);
    CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("bounds subcommand") {
    const auto fixed = run_cli("bounds --schedule fixed --n 1000 --segments 1 --pmin 0.5");
    CHECK(fixed.exit_code == 0);
    // about 3.7 sqrt(1000) + 1
    CHECK(fixed.output.find("bound: 118.0250") != std::string::npos);

    const auto three = run_cli("bounds --schedule fixed --n 1000 --segments 3 --pmin 0.5");
    CHECK(three.output.find("bound: 354.0751") != std::string::npos); // 3x

    const auto bad = run_cli("bounds --schedule fixed --n 1000 --pmin 1.0");
    CHECK(bad.exit_code == 3);

    const auto csv = run_cli("bounds --schedule decaying --n 50 --csv cli_bounds.csv");
    CHECK(csv.exit_code == 0);
    std::ifstream in("cli_bounds.csv");
    std::string header;
    std::getline(in, header);
    CHECK(header == "k,bound_bits");
    int rows = 0;
    for (std::string line; std::getline(in, line);)
        rows += !line.empty();
    CHECK(rows == 50);
    std::remove("cli_bounds.csv");
}

TEST_CASE("simulate: reduced run reports dominance and repeats exactly") {
    const std::string flags =
        "simulate --n 60 --partition 20,60 --qstep 0.45 --repeats 2 --seed 42 "
        "--out cli_sim_a.csv";
    const auto a = run_cli(flags);
    CHECK(a.exit_code == 0);
    CHECK(a.output.find("dominance: true") != std::string::npos);
    CHECK(a.output.find("simulations: 54\n") != std::string::npos); // 3^3 * 2

    const auto b = run_cli("simulate --n 60 --partition 20,60 --qstep 0.45 "
                           "--repeats 2 --seed 42 --out cli_sim_b.csv --workers 3");
    CHECK(b.exit_code == 0);
    CHECK(read_bytes("cli_sim_a.csv") == read_bytes("cli_sim_b.csv"));
    std::remove("cli_sim_a.csv");
    std::remove("cli_sim_b.csv");
}

TEST_CASE("simulate accepts a key=value config file") {
    {
        std::ofstream cfg("cli_sim.cfg");
        cfg << "n=60\npartition=20,60\nqstep=0.45\nrepeats=2\nseed=42\n"
            << "schedule=decaying\nout=cli_sim_cfg.csv\n";
    }
    const auto r = run_cli("simulate --config cli_sim.cfg");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("dominance: true") != std::string::npos);
    CHECK(file_exists("cli_sim_cfg.csv"));
    std::remove("cli_sim.cfg");
    std::remove("cli_sim_cfg.csv");
}

TEST_CASE("entropy subcommand") {
    // 0x55 bytes: alternating bits, q = 1/2, h equals the bit length
    write_bytes("cli_e.bin", std::vector<unsigned char>(256, 0x55));
    const auto r = run_cli("entropy cli_e.bin");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("bits: 2048") != std::string::npos);
    CHECK(r.output.find("h: 2048.000000") != std::string::npos);
    CHECK(r.output.find("pws baseline: 2048.000000") != std::string::npos);

    const auto split = run_cli("entropy cli_e.bin --partition 1024,2048");
    CHECK(split.exit_code == 0);
    CHECK(split.output.find("pws baseline: 2048.000000") != std::string::npos);

    const auto bad = run_cli("entropy cli_e.bin --partition 1024,2000");
    CHECK(bad.exit_code == 3);

    write_bytes("cli_z.bin", std::vector<unsigned char>(64, 0));
    const auto zeros = run_cli("entropy cli_z.bin --partition 100,512");
    CHECK(zeros.exit_code == 0);
    CHECK(zeros.output.find("h: 0.000000") != std::string::npos);
    CHECK(zeros.output.find("pws baseline: 0.000000") != std::string::npos);

    std::remove("cli_e.bin");
    std::remove("cli_z.bin");
}

TEST_CASE("identical invocations produce identical outputs") {
    write_bytes("cli_rep.bin", sample_corpus(0));
    CHECK(run_cli("compress cli_rep.bin cli_rep1.esp --auto-n").exit_code == 0);
    CHECK(run_cli("compress cli_rep.bin cli_rep2.esp --auto-n").exit_code == 0);
    CHECK(read_bytes("cli_rep1.esp") == read_bytes("cli_rep2.esp"));
    std::remove("cli_rep.bin");
    std::remove("cli_rep1.esp");
    std::remove("cli_rep2.esp");
    std::remove("cli_out.txt");
}
