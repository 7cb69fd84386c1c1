#ifndef QSV_NONADVERSARIAL_HPP
#define QSV_NONADVERSARIAL_HPP

#include <cmath>
#include <cstdint>

#include "qsv/errors.hpp"
#include "qsv/numeric.hpp"

namespace qsv {

// Infidelity budget and significance level, both in (0, 1).
struct Precision {
    double epsilon;
    double delta;

    Precision(double epsilon_, double delta_) : epsilon(epsilon_), delta(delta_) {
        if (!(epsilon > 0.0 && epsilon < 1.0)) {
            throw validation_error("epsilon must lie in (0, 1)");
        }
        if (!(delta > 0.0 && delta < 1.0)) {
            throw validation_error("delta must lie in (0, 1)");
        }
    }
};

struct NonadversarialPlan {
    std::int64_t n_exact = 0;  // minimal N with (1 - nu*eps)^N <= delta
    std::int64_t n_upper = 0;  // ceil((nu*eps)^-1 ln(1/delta))
};

// Worst pass probability per test for a state with infidelity >= epsilon.
inline double max_pass_probability(double nu, double epsilon) {
    if (!(nu > 0.0 && nu <= 1.0)) throw validation_error("nu must lie in (0, 1]");
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw validation_error("epsilon must lie in (0, 1)");
    return 1.0 - nu * epsilon;
}

// Acceptance probability bound for N independent copies of average
// infidelity eps_bar: (1 - nu*eps_bar)^N.
inline double accept_probability_bound(double nu, double eps_bar, std::int64_t n) {
    if (!(nu > 0.0 && nu <= 1.0)) throw validation_error("nu must lie in (0, 1]");
    if (!(eps_bar >= 0.0 && eps_bar <= 1.0)) throw validation_error("eps_bar must lie in [0, 1]");
    if (n < 1) throw validation_error("n must be positive");
    if (nu * eps_bar >= 1.0) return 0.0;
    return std::exp(static_cast<double>(n) * std::log1p(-nu * eps_bar));
}

// Minimal test count for the i.i.d. source. The ceiling of the log ratio is
// only a candidate; the defining inequality decides, with a +/-1 correction
// when rounding overshoots.
inline NonadversarialPlan tests_needed_nonadversarial(double nu, const Precision& pr) {
    if (!(nu > 0.0 && nu <= 1.0)) throw validation_error("nu must lie in (0, 1]");
    const double log_keep = std::log1p(-nu * pr.epsilon);  // ln(1 - nu*eps) < 0
    const double ratio = std::log(pr.delta) / log_keep;
    std::int64_t n = nudged_ceil(ratio);
    if (n < 1) n = 1;
    auto passes = [&](std::int64_t m) {
        return fuzzy_leq(std::exp(static_cast<double>(m) * log_keep), pr.delta);
    };
    int guard = 0;
    while (!passes(n)) {
        ++n;
        if (++guard > 4) throw std::logic_error("tests_needed_nonadversarial: correction diverged");
    }
    while (n > 1 && passes(n - 1)) {
        --n;
        if (++guard > 4) throw std::logic_error("tests_needed_nonadversarial: correction diverged");
    }
    NonadversarialPlan plan;
    plan.n_exact = n;
    plan.n_upper = nudged_ceil(-std::log(pr.delta) / (nu * pr.epsilon));
    return plan;
}

}  // namespace qsv

#endif
