#include <doctest.h>

#include <cmath>

#include "qsv/numeric.hpp"

using namespace qsv;

TEST_CASE("nudged ceiling snaps overshoot just above an integer") {
    CHECK(nudged_ceil(62.0) == 62);
    CHECK(nudged_ceil(62.0000000001) == 62);   // inside the snap window
    CHECK(nudged_ceil(62.0001) == 63);         // genuinely above
    CHECK(nudged_ceil(61.2) == 62);
    CHECK(nudged_ceil(0.04) == 1);
    CHECK(nudged_ceil(-1.5) == -1);
}

TEST_CASE("nudged floor snaps undershoot just below an integer") {
    CHECK(nudged_floor(3.0) == 3);
    CHECK(nudged_floor(2.9999999999) == 3);
    CHECK(nudged_floor(2.9999) == 2);
    CHECK(nudged_floor(3.7) == 3);
}

TEST_CASE("counts outside the int64 range are refused, not wrapped") {
    CHECK_THROWS_AS(nudged_ceil(1e19), infeasible_error);
    CHECK_THROWS_AS(nudged_floor(-1e19), infeasible_error);
}

TEST_CASE("fuzzy comparisons scale with operand magnitude") {
    CHECK(fuzzy_geq(0.9, 0.9));
    CHECK(fuzzy_geq(0.9 - 1e-12, 0.9));
    CHECK_FALSE(fuzzy_geq(0.9 - 1e-6, 0.9));
    // tiny probabilities keep their meaning: slack is relative, not absolute
    CHECK_FALSE(fuzzy_leq(2e-9, 1e-9));
    CHECK(fuzzy_leq(1e-9 * (1.0 - 1e-12), 1e-9));
}

TEST_CASE("pow_via_log agrees with exact powers") {
    CHECK(pow_via_log(0.5, 0.0) == 1.0);
    CHECK(pow_via_log(0.0, 5.0) == 0.0);
    CHECK(pow_via_log(0.0, 0.0) == 1.0);
    CHECK(pow_via_log(0.5, 2.0) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(pow_via_log(0.3, 10.0) == doctest::Approx(std::pow(0.3, 10)).epsilon(1e-12));
}

TEST_CASE("x ln(1/x) peaks at 1/e") {
    CHECK(x_log_inv(kInvE) == doctest::Approx(kInvE).epsilon(1e-14));
    CHECK(x_log_inv(1.0) == 0.0);
    CHECK(x_log_inv(0.5) == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-14));
    CHECK(x_log_inv(0.3) < x_log_inv(kInvE));
    CHECK(x_log_inv(0.45) < x_log_inv(kInvE));
}

TEST_CASE("largest_satisfying follows the predicate, not the anchor") {
    auto pred = [](std::int64_t k) { return k <= 17; };
    CHECK(detail::largest_satisfying(0, 100, 17, pred) == 17);
    CHECK(detail::largest_satisfying(0, 100, 3, pred) == 17);    // anchor far low
    CHECK(detail::largest_satisfying(0, 100, 80, pred) == 17);   // anchor far high
    CHECK(detail::largest_satisfying(0, 10, 17, pred) == 10);    // clipped by hi
    auto always = [](std::int64_t) { return true; };
    CHECK(detail::largest_satisfying(0, 5, 0, always) == 5);
}
