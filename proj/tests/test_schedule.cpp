#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "esp/schedule.hpp"

using namespace esp;

TEST_CASE("rate values") {
    const auto fixed = SmoothingSchedule::fixed(0.75);
    CHECK(fixed.rate_at(1) == 0.75);
    CHECK(fixed.rate_at(12345) == 0.75);
    CHECK_THROWS_AS(fixed.rate_at(0), std::invalid_argument);

    // exp(-pi / sqrt(24))
    const auto decaying = SmoothingSchedule::decaying();
    CHECK(decaying.rate_at(1) == doctest::Approx(0.526620599330303).epsilon(1e-12));
    CHECK(decaying.rate_at(1) > 0.5);

    // lambda=0.5, m=1: t_0 = 1, t_1 = 1.5, alpha_1 = 1/3
    const auto count = SmoothingSchedule::count_smoothing(0.5, 1);
    CHECK(count.rate_at(1) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("schedule parameter validation") {
    CHECK_THROWS_AS(SmoothingSchedule::fixed(0.0), std::invalid_argument);
    CHECK_THROWS_AS(SmoothingSchedule::fixed(1.0), std::invalid_argument);
    CHECK_THROWS_AS(SmoothingSchedule::count_smoothing(1.5, 1), std::invalid_argument);
    CHECK_THROWS_AS(SmoothingSchedule::count_smoothing(0.5, 0), std::invalid_argument);
}

TEST_CASE("assumption 1 flag") {
    CHECK(SmoothingSchedule::fixed(0.75).assumption1_satisfied());
    CHECK_FALSE(SmoothingSchedule::fixed(0.5).assumption1_satisfied());
    CHECK(SmoothingSchedule::decaying().assumption1_satisfied());
    // m = 1 gives alpha_1 = lambda / (1 + lambda) < 1/2 for every lambda
    CHECK_FALSE(SmoothingSchedule::count_smoothing(0.96, 1).assumption1_satisfied());
    CHECK(SmoothingSchedule::count_smoothing(0.9, 2).assumption1_satisfied());
}

TEST_CASE("optimal fixed rate") {
    CHECK(optimal_fixed_alpha(1000) == doctest::Approx(0.9602341856588502).epsilon(1e-12));
    CHECK(optimal_fixed_alpha(5) == doctest::Approx(0.526620599330303).epsilon(1e-12));
    CHECK(optimal_fixed_alpha(5) > 0.5);
    CHECK(optimal_fixed_alpha(4) < 0.5); // n >= 5 needed for assumption 1
    CHECK(optimal_fixed_alpha(2) == doctest::Approx(0.2773292556390075).epsilon(1e-12));
    CHECK_FALSE(SmoothingSchedule::fixed(optimal_fixed_alpha(2)).assumption1_satisfied());
    CHECK_THROWS_AS(optimal_fixed_alpha(1), std::invalid_argument);
}

TEST_CASE("serialization record round trip") {
    const auto count = SmoothingSchedule::count_smoothing(0.9, 3);
    const auto back = SmoothingSchedule::from_params(
        std::uint8_t(count.kind()), count.param1(), count.param2());
    CHECK(back.kind() == ScheduleKind::Count);
    CHECK(back.param1() == 0.9);
    CHECK(back.param2() == 3);
    CHECK_THROWS_AS(SmoothingSchedule::from_params(9, 0.5, 0), std::invalid_argument);
    CHECK(SmoothingSchedule::from_params(1, 0.0, 0).kind() == ScheduleKind::Decaying);
}

TEST_CASE("beta: fixed powers and base case") {
    const auto sched = SmoothingSchedule::fixed(0.9);
    ScheduleCursor cursor(sched);
    CHECK(cursor.beta() == 1.0); // beta_0
    cursor.advance();
    cursor.advance();
    cursor.advance();
    CHECK(cursor.beta() == doctest::Approx(0.729).epsilon(1e-12));
    CHECK(cursor.log2_beta() == doctest::Approx(3 * std::log2(0.9)).epsilon(1e-12));
}

TEST_CASE("beta is strictly decreasing in (0,1]") {
    for (const auto& sched :
         {SmoothingSchedule::fixed(0.6), SmoothingSchedule::decaying(),
          SmoothingSchedule::count_smoothing(0.9, 2)}) {
        ScheduleCursor cursor(sched);
        double prev = cursor.beta();
        double prev_log = cursor.log2_beta();
        CHECK(prev == 1.0);
        for (int i = 0; i < 2000; ++i) {
            cursor.advance();
            CHECK(cursor.beta() > 0.0);
            // the product decreases strictly until it parks on the smallest
            // denormal; the log form keeps falling forever
            if (prev > 1e-300)
                CHECK(cursor.beta() < prev);
            CHECK(cursor.log2_beta() < prev_log);
            prev = cursor.beta();
            prev_log = cursor.log2_beta();
        }
    }
}

TEST_CASE("log2 beta tracks the product past underflow") {
    const auto sched = SmoothingSchedule::fixed(0.6);
    ScheduleCursor cursor(sched);
    for (int i = 0; i < 2000; ++i)
        cursor.advance();
    CHECK(cursor.beta() < 1e-320); // product parked on the denormal floor
    CHECK(cursor.log2_beta() == doctest::Approx(2000 * std::log2(0.6)).epsilon(1e-9));
}

TEST_CASE("decaying rates increase and stay above 1/2") {
    const auto sched = SmoothingSchedule::decaying();
    RateCursor cursor(sched);
    double prev = 0.5;
    for (std::uint64_t k = 1; k <= 1'000'000; ++k) {
        const double a = cursor.advance();
        CHECK(a > prev);
        prev = a;
    }
    CHECK(prev < 1.0);
}

TEST_CASE("count smoothing: closed form matches incremental product") {
    for (double lambda : {0.1, 0.5, 0.9, 0.99}) {
        for (std::uint32_t m : {1u, 2u, 10u}) {
            const auto sched = SmoothingSchedule::count_smoothing(lambda, m);
            ScheduleCursor cursor(sched);
            for (std::uint64_t i = 1; i <= 100'000; ++i) {
                cursor.advance();
                if ((i & (i - 1)) != 0 && i % 7717 != 0)
                    continue; // check powers of two and a sparse residue class
                const double closed = (1.0 - std::pow(lambda, double(m))) /
                                      (1.0 - std::pow(lambda, double(m) + double(i))) *
                                      std::pow(lambda, double(i));
                if (closed > 1e-280) {
                    CHECK(cursor.beta() ==
                          doctest::Approx(closed).epsilon(1e-12));
                } else {
                    const double closed_log2 =
                        std::log2(1.0 - std::pow(lambda, double(m))) -
                        std::log2(1.0 - std::pow(lambda, double(m) + double(i))) +
                        double(i) * std::log2(lambda);
                    CHECK(cursor.log2_beta() ==
                          doctest::Approx(closed_log2).epsilon(1e-10));
                }
            }
        }
    }
}

TEST_CASE("count smoothing rates approach lambda from below") {
    for (double lambda : {0.3, 0.9, 0.99}) {
        const auto sched = SmoothingSchedule::count_smoothing(lambda, 1);
        RateCursor cursor(sched);
        double prev = 0.0;
        for (int k = 1; k <= 5000; ++k) {
            const double a = cursor.advance();
            CHECK(a >= prev);
            if (lambda - a > 1e-9)
                CHECK(a > prev); // strict until the rate converges onto lambda
            CHECK(a <= lambda);
            prev = a;
        }
        const auto k_far = std::uint64_t(1e4 / (1.0 - lambda));
        CHECK(std::abs(sched.rate_at(k_far) - lambda) < 1e-6);
    }
}

TEST_CASE("geometric fraction inequality (1-l^a)/(1-l^b) >= a/b") {
    for (int li = 1; li <= 19; ++li) {
        const double lambda = 0.05 * li;
        for (int a = 1; a <= 100; ++a)
            for (int b = a; b <= 100; ++b) {
                const double lhs = (1.0 - std::pow(lambda, a)) /
                                   (1.0 - std::pow(lambda, b));
                CHECK(lhs >= double(a) / double(b) - 1e-12);
            }
    }
}

TEST_CASE("count smoothing t0 closed form") {
    const auto sched = SmoothingSchedule::count_smoothing(0.5, 3);
    CHECK(sched.count_t0() == doctest::Approx(1.0 + 0.5 + 0.25).epsilon(1e-15));
}

TEST_CASE("count smoothing beta after one step") {
    // lambda=0.9, m=1: beta_1 = (1-lambda) lambda / (1-lambda^2) = 0.09/0.19
    ScheduleCursor cursor(SmoothingSchedule::count_smoothing(0.9, 1));
    cursor.advance();
    CHECK(cursor.beta() == doctest::Approx(0.09 / 0.19).epsilon(1e-12));
}
