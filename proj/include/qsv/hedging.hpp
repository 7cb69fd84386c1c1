#ifndef QSV_HEDGING_HPP
#define QSV_HEDGING_HPP

#include <cmath>
#include <cstdint>
#include <optional>

#include "qsv/errors.hpp"
#include "qsv/nonadversarial.hpp"
#include "qsv/numeric.hpp"

namespace qsv {

// The trivial-test recipe: mixing the identity test in with probability p
// lifts the hedged eigenvalues to beta_p = p + (1-p)beta and
// tau_p = p + (1-p)tau, trading a slightly smaller gap for a bounded cost
// constant h(p, nu, tau).

struct HedgeReport {
    double p = 0.0;
    double beta_p = 0.0;
    double tau_p = 0.0;
    double h_value = 0.0;           // h(p, nu, tau)
    double p_star = 0.0;            // optimal hedge for this (nu, tau)
    double p_star_max = 0.0;        // optimal hedge at tau = 0
    double nu_h = 0.0;              // nu * h(nu/e, nu, 0), the asymptotic overhead
    double n_bound = 0.0;           // strict upper bound on the hedged test count
    double n_bound_secondary = 0.0; // weaker closed form [(1-nu+nu^2/e) nu eps]^-1 ln(1/F delta)
    double ratio_bound = 0.0;       // upper bound on hedged N / nonadversarial N
    bool theorem_choice = false;    // p is nu/e or within [p_star, p_star_max]
};

// h(p, nu, tau) = 1 / min{beta_p ln(1/beta_p), tau_p ln(1/tau_p)}.
inline double hedge_cost(double p, double nu, double tau) {
    if (!(p >= 0.0 && p < 1.0)) throw validation_error("p must lie in [0, 1)");
    if (!(nu > 0.0 && nu <= 1.0)) throw validation_error("nu must lie in (0, 1]");
    const double beta = 1.0 - nu;
    if (!(tau >= 0.0 && tau <= beta + 1e-12)) {
        throw validation_error("need 0 <= tau <= 1 - nu");
    }
    const double beta_p = p + (1.0 - p) * beta;
    const double tau_p = p + (1.0 - p) * tau;
    if (tau_p <= 0.0) {
        throw infeasible_error("tau_p = 0: the cost constant diverges, hedge with p > 0");
    }
    return 1.0 / std::min(x_log_inv(beta_p), x_log_inv(tau_p));
}

// Smallest p >= 0 with beta_p >= 1/e and
// tau_p ln(1/tau_p) >= beta_p ln(1/beta_p), found by bisection. Both margins
// grow with p once beta_p has crossed 1/e, so the feasible set is an up-set
// and bisection on the indicator is sound.
inline double p_star_numeric(double nu, double tau) {
    if (!(nu > 0.0 && nu <= 1.0)) throw validation_error("nu must lie in (0, 1]");
    const double beta = 1.0 - nu;
    if (!(tau >= 0.0 && tau <= beta + 1e-12)) {
        throw validation_error("need 0 <= tau <= 1 - nu");
    }
    auto feasible = [&](double p) {
        const double beta_p = p + (1.0 - p) * beta;
        const double tau_p = p + (1.0 - p) * tau;
        if (beta_p < kInvE) return false;
        if (tau_p <= 0.0) return false;
        return x_log_inv(tau_p) >= x_log_inv(beta_p);
    };
    if (feasible(0.0)) return 0.0;
    double lo = 0.0;
    double hi = 1.0 - 1e-15;
    if (!feasible(hi)) throw std::logic_error("p_star_numeric: no feasible hedge below 1");
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (feasible(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

// Closed form for homogeneous operators (tau = beta), bisection otherwise.
inline double p_star(double nu, double tau) {
    if (!(nu > 0.0 && nu <= 1.0)) throw validation_error("nu must lie in (0, 1]");
    const double beta = 1.0 - nu;
    if (!(tau >= 0.0 && tau <= beta + 1e-12)) {
        throw validation_error("need 0 <= tau <= 1 - nu");
    }
    if (std::fabs(tau - beta) <= 1e-12) {
        if (nu >= 1.0 - kInvE) return (kE * nu - kE + 1.0) / (kE * nu);
        return 0.0;
    }
    return p_star_numeric(nu, tau);
}

// Ratio of the hedged adversarial test bound to the nonadversarial count:
// nu h(p, nu, tau) [ln(1 - nu eps)^-1] ln(F delta) / (nu eps ln delta).
inline double overhead_ratio_bound(const Precision& pr, double nu, double tau, double p) {
    const double h = hedge_cost(p, nu, tau);
    const double eps = pr.epsilon;
    const double log_accept = -std::log1p(-nu * eps);              // > 0
    const double log_fdelta = std::log1p(-eps) + std::log(pr.delta);  // < 0
    const double log_delta = std::log(pr.delta);                   // < 0
    return nu * h * log_accept * log_fdelta / (nu * eps * log_delta);
}

// Full report for a hedge choice. p defaults to nu/e, which needs no
// knowledge of tau; an explicit p outside the covered choices still gets the
// generic h-based bound, flagged via theorem_choice = false.
inline HedgeReport hedged_plan(const Precision& pr, double nu, double tau,
                               std::optional<double> explicit_p = std::nullopt) {
    if (!(nu > 0.0 && nu <= 1.0)) throw validation_error("nu must lie in (0, 1]");
    const double beta = 1.0 - nu;
    if (!(tau >= 0.0 && tau <= beta + 1e-12)) {
        throw validation_error("need 0 <= tau <= 1 - nu");
    }
    const double p_auto = nu * kInvE;
    const double p = explicit_p ? *explicit_p : p_auto;
    if (!(p >= 0.0 && p < 1.0)) throw validation_error("p must lie in [0, 1)");

    HedgeReport r;
    r.p = p;
    r.beta_p = p + (1.0 - p) * beta;
    r.tau_p = p + (1.0 - p) * tau;
    r.h_value = hedge_cost(p, nu, tau);
    r.p_star = p_star(nu, tau);
    r.p_star_max = p_star(nu, 0.0);
    const double h_auto = hedge_cost(p_auto, nu, 0.0);  // h(nu/e, nu, 0)
    r.nu_h = nu * h_auto;
    r.theorem_choice = !explicit_p || std::fabs(p - p_auto) <= 1e-12 ||
                       (fuzzy_geq(p, r.p_star) && fuzzy_leq(p, r.p_star_max));

    const double eps = pr.epsilon;
    const double log_fdelta_inv = -(std::log1p(-eps) + std::log(pr.delta));  // > 0
    r.n_bound = (r.theorem_choice ? h_auto : r.h_value) * log_fdelta_inv / eps;
    r.n_bound_secondary =
        log_fdelta_inv / ((1.0 - nu + nu * nu * kInvE) * nu * eps);
    r.ratio_bound = r.theorem_choice ? overhead_ratio_bound(pr, nu, 0.0, p_auto)
                                     : overhead_ratio_bound(pr, nu, tau, p);
    return r;
}

}  // namespace qsv

#endif
