#include <doctest.h>

#include <cmath>

#include "qsv/adversarial_homogeneous.hpp"
#include "qsv/hedging.hpp"

using namespace qsv;

TEST_CASE("hedge cost hand values") {
    CHECK(hedge_cost(kInvE, 1.0, 0.0) == doctest::Approx(kE).epsilon(1e-12));
    // p = 0 on a homogeneous operator reduces to the unhedged cost
    CHECK(hedge_cost(0.0, 0.5, 0.5) ==
          doctest::Approx(1.0 / (0.5 * std::log(2.0))).epsilon(1e-12));
    // both branches evaluated, smaller one wins
    const double beta_p = 0.2 + 0.8 * 0.5;
    const double tau_p = 0.2 + 0.8 * 0.1;
    const double expected = 1.0 / std::min(-beta_p * std::log(beta_p), -tau_p * std::log(tau_p));
    CHECK(hedge_cost(0.2, 0.5, 0.1) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(hedge_cost(0.2, 0.5, 0.1) == doctest::Approx(3.2627).epsilon(1e-4));
    // singular operator without hedging has no finite cost
    CHECK_THROWS_AS(hedge_cost(0.0, 1.0, 0.0), infeasible_error);
}

TEST_CASE("optimal hedge probability: closed forms and definition agree") {
    // homogeneous with a small gap never hedges
    CHECK(p_star(0.5, 0.5) == 0.0);
    // homogeneous with a large gap uses the closed form
    CHECK(p_star(0.8, 0.2) == doctest::Approx((kE * 0.8 - kE + 1.0) / (kE * 0.8)).epsilon(1e-12));
    CHECK(p_star(0.8, 0.2) == doctest::Approx(0.209845).epsilon(1e-5));
    // projector strategy: both eigenvalues ride to 1/e
    CHECK(p_star(1.0, 0.0) == doctest::Approx(kInvE).epsilon(1e-10));
    CHECK(p_star_numeric(1.0, 0.0) == doctest::Approx(kInvE).epsilon(1e-10));
    // bisection agrees with the closed form on homogeneous inputs
    for (int i = 1; i <= 20; ++i) {
        const double nu = i / 20.0;
        const double tau = 1.0 - nu;
        CHECK(std::fabs(p_star_numeric(nu, tau) - p_star(nu, tau)) <= 1e-10);
    }
}

TEST_CASE("optimal hedge is monotone: up in nu, down in tau") {
    const int steps = 20;
    for (int i = 1; i <= steps; ++i) {
        const double nu = i / static_cast<double>(steps);
        double prev = 2.0;
        for (int j = 0; j < steps; ++j) {
            const double tau = (1.0 - nu) * j / static_cast<double>(steps);
            const double p = p_star(nu, tau);
            CHECK(p <= prev + 1e-9);
            prev = p;
        }
    }
    for (int j = 0; j < steps; ++j) {
        const double tau = j / static_cast<double>(steps) * 0.5;
        double prev = -1.0;
        for (int i = 1; i <= steps; ++i) {
            const double nu = i / static_cast<double>(steps);
            if (tau > 1.0 - nu) continue;
            const double p = p_star(nu, tau);
            CHECK(p >= prev - 1e-9);
            prev = p;
        }
    }
}

TEST_CASE("nu * h(nu/e, nu, 0) rises from 1 to e") {
    double prev = 1.0;
    for (int i = 1; i <= 20; ++i) {
        const double nu = i / 20.0;
        const double nu_h = nu * hedge_cost(nu * kInvE, nu, 0.0);
        CHECK(nu_h > prev);  // strictly increasing
        CHECK(nu_h > 1.0);
        CHECK(nu_h <= kE + 1e-12);
        prev = nu_h;
    }
    CHECK(std::fabs(1.0 * hedge_cost(kInvE, 1.0, 0.0) - kE) <= 1e-12);
    // h itself decreases in nu
    double prev_h = 1e9;
    for (int i = 1; i <= 20; ++i) {
        const double nu = i / 20.0;
        const double h = hedge_cost(nu * kInvE, nu, 0.0);
        CHECK(h < prev_h);
        prev_h = h;
    }
}

TEST_CASE("overhead ratio bound: worked value and limits") {
    const double ratio = overhead_ratio_bound(Precision(0.1, 0.1), 1.0, 0.0, kInvE);
    CHECK(ratio == doctest::Approx(2.9954).epsilon(1e-4));
    CHECK(ratio <= 3.0);
    // approaches nu * h as precision sharpens
    const double nu = 0.6;
    const double p = nu * kInvE;
    const double nu_h = nu * hedge_cost(p, nu, 0.0);
    double prev = 1e9;
    for (double x : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5}) {
        const double r = overhead_ratio_bound(Precision(x, x), nu, 0.0, p);
        CHECK(r > nu_h);
        CHECK(r < prev);
        prev = r;
    }
    CHECK(prev == doctest::Approx(nu_h).epsilon(1e-3));
}

TEST_CASE("exact hedged counts stay below the hedged plan bound") {
    // homogeneous strategies hedge to lambda_p = p + (1-p)lambda, where the
    // exact count is available for a direct comparison
    for (double lambda = 0.1; lambda < 0.95; lambda += 0.2) {
        const double nu = 1.0 - lambda;
        for (double x : {0.1, 0.01}) {
            const Precision pr(x, x);
            const HedgeReport hr = hedged_plan(pr, nu, lambda);
            const double lambda_p = hr.p + (1.0 - hr.p) * lambda;
            const HomogeneousPlan plan = tests_homogeneous(pr, lambda_p);
            CHECK(static_cast<double>(plan.n_exact) < hr.n_bound);
            CHECK(hr.n_bound <= hr.n_bound_secondary * (1.0 + 1e-12));
        }
    }
    // exact nonadversarial/adversarial ratio lies below the reported bound
    const Precision pr(0.001, 0.001);
    const double lambda = 0.5;
    const HomogeneousPlan adv = tests_homogeneous(pr, lambda);
    const NonadversarialPlan na = tests_needed_nonadversarial(0.5, pr);
    const double bound = overhead_ratio_bound(pr, 0.5, lambda, 0.0);
    CHECK(static_cast<double>(adv.n_exact) / static_cast<double>(na.n_exact) < bound);
}

TEST_CASE("hedged plan report fields") {
    const HedgeReport hr = hedged_plan(Precision(0.1, 0.1), 1.0, 0.0);
    CHECK(hr.p == doctest::Approx(kInvE).epsilon(1e-12));
    CHECK(hr.beta_p == doctest::Approx(kInvE).epsilon(1e-12));
    CHECK(hr.tau_p == doctest::Approx(kInvE).epsilon(1e-12));
    CHECK(hr.nu_h == doctest::Approx(kE).epsilon(1e-12));
    CHECK(hr.ratio_bound == doctest::Approx(2.9954).epsilon(1e-4));
    CHECK(hr.theorem_choice);
    CHECK(hr.p_star <= hr.p_star_max + 1e-12);
    CHECK(hr.n_bound > 0.0);

    // explicit p inside [p_star, p_star_max] keeps the theorem constant
    const HedgeReport inside = hedged_plan(Precision(0.1, 0.1), 0.9, 0.05,
                                           0.5 * (p_star(0.9, 0.05) + p_star(0.9, 0.0)));
    CHECK(inside.theorem_choice);
    // explicit p far outside loses it but still reports the generic bound
    const HedgeReport outside = hedged_plan(Precision(0.1, 0.1), 0.9, 0.05, 0.9);
    CHECK_FALSE(outside.theorem_choice);
    CHECK(outside.n_bound > 0.0);
}
