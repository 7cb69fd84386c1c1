#ifndef QSV_ADVERSARIAL_GENERAL_HPP
#define QSV_ADVERSARIAL_GENERAL_HPP

#include <cmath>
#include <cstdint>

#include "qsv/errors.hpp"
#include "qsv/nonadversarial.hpp"
#include "qsv/numeric.hpp"

namespace qsv {

// Bounds for arbitrary verification operators, driven by the second largest
// eigenvalue beta and the smallest eigenvalue tau.

struct NonsingularSummary {
    double beta = 0.0;
    double tau = 0.0;
    double beta_tilde = 0.0;  // the eigenvalue whose x ln(1/x) is smaller; ties go to beta
    double h = 0.0;           // 1 / (beta_tilde ln(1/beta_tilde))
};

struct GeneralFidelityBound {
    double bound = 0.0;    // 1 - (1 - delta) / (N nu delta); may be negative (vacuous)
    bool saturated = false;  // exact for delta >= (1 + N beta) / (N + 1)
};

struct NonsingularTestBounds {
    std::int64_t k_minus = 0;
    std::int64_t n_lower = 0;
    double n_upper_strict = 0.0;  // exact N is strictly below this
    double n_approx = 0.0;        // h eps^-1 ln(1/delta)
};

// Universal fidelity floor from the spectral gap alone. Negative values are
// reported raw; clamping is a display concern, not a guarantee.
inline GeneralFidelityBound fidelity_lower_bound_general(std::int64_t n, double delta, double nu) {
    if (n < 1) throw validation_error("n must be positive");
    if (!(delta > 0.0 && delta <= 1.0)) throw validation_error("delta must lie in (0, 1]");
    if (!(nu > 0.0 && nu <= 1.0)) throw validation_error("nu must lie in (0, 1]");
    GeneralFidelityBound out;
    out.bound = 1.0 - (1.0 - delta) / (static_cast<double>(n) * nu * delta);
    const double beta = 1.0 - nu;
    out.saturated =
        fuzzy_geq(delta, (1.0 + static_cast<double>(n) * beta) / static_cast<double>(n + 1));
    return out;
}

// ceil((1 - delta) / (nu delta eps)): valid for every operator with gap nu,
// including singular ones.
inline std::int64_t tests_upper_bound_general(const Precision& pr, double nu) {
    if (!(nu > 0.0 && nu <= 1.0)) throw validation_error("nu must lie in (0, 1]");
    const std::int64_t n = nudged_ceil((1.0 - pr.delta) / (nu * pr.delta * pr.epsilon));
    return n < 1 ? 1 : n;
}

inline NonsingularSummary nonsingular_summary(double beta, double tau) {
    if (tau == 0.0) {
        throw infeasible_error("singular operator: hedge with the trivial test first");
    }
    if (!(tau > 0.0 && tau <= beta && beta < 1.0)) {
        throw validation_error("need 0 < tau <= beta < 1");
    }
    NonsingularSummary s;
    s.beta = beta;
    s.tau = tau;
    s.beta_tilde = (x_log_inv(beta) <= x_log_inv(tau)) ? beta : tau;
    s.h = 1.0 / x_log_inv(s.beta_tilde);
    return s;
}

// Fidelity floor for nonsingular operators:
// A / (A - h ln(tau delta)) with A = N + 1 - ln(tau delta)/ln(beta).
inline double fidelity_lower_bound_nonsingular(std::int64_t n, double delta,
                                               const NonsingularSummary& s) {
    if (n < 1) throw validation_error("n must be positive");
    if (!(delta > 0.0 && delta <= 1.0)) throw validation_error("delta must lie in (0, 1]");
    const double log_taudelta = std::log(s.tau) + std::log(delta);  // < 0
    const double a = static_cast<double>(n + 1) - log_taudelta / std::log(s.beta);
    return a / (a - s.h * log_taudelta);
}

// Sandwich on the exact adversarial test count of a nonsingular operator.
inline NonsingularTestBounds tests_bounds_nonsingular(const Precision& pr,
                                                      const NonsingularSummary& s) {
    NonsingularTestBounds out;
    const double fid = 1.0 - pr.epsilon;
    out.k_minus = nudged_floor(std::log(pr.delta) / std::log(s.beta_tilde));
    out.n_lower = out.k_minus + nudged_ceil(static_cast<double>(out.k_minus) * fid /
                                            (s.beta_tilde * pr.epsilon));
    out.n_upper_strict = s.h * (-(std::log(fid) + std::log(pr.delta))) / pr.epsilon;
    out.n_approx = s.h * (-std::log(pr.delta)) / pr.epsilon;
    return out;
}

}  // namespace qsv

#endif
