#ifndef QSV_ADVERSARIAL_HOMOGENEOUS_HPP
#define QSV_ADVERSARIAL_HOMOGENEOUS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>

#include "qsv/errors.hpp"
#include "qsv/nonadversarial.hpp"
#include "qsv/numeric.hpp"

namespace qsv {

// Exact adversarial figures of merit for homogeneous strategies: all
// non-target eigenvalues equal lambda, so the worst adversary admits a
// closed form.

struct FidelityResult {
    double fidelity = 0.0;
    std::optional<std::int64_t> k_star;  // anchor count of the extremal mixture
    bool zero_regime = false;            // delta <= lambda^N: no guarantee at all
};

struct HomogeneousPlan {
    std::int64_t n_exact = 0;
    std::int64_t k_opt = 0;
    std::int64_t n_lower = 0;
    std::int64_t n_upper = 0;
    double n_approx = 0.0;  // high-precision limit ln(delta) / (lambda*eps*ln(lambda))
};

// Singular case lambda = 0: F(N, delta) = max{0, ((N+1)delta - 1) / (N delta)}.
inline double fidelity_singular(std::int64_t n, double delta) {
    if (n < 1) throw validation_error("n must be positive");
    if (!(delta > 0.0 && delta <= 1.0)) throw validation_error("delta must lie in (0, 1]");
    const double nd = static_cast<double>(n) * delta;
    return std::max(0.0, (nd + delta - 1.0) / nd);
}

// Singular case test count: ceil((1 - delta) / (eps * delta)), pinned to the
// defining minimality property.
inline std::int64_t tests_singular(const Precision& pr) {
    const double ratio = (1.0 - pr.delta) / (pr.epsilon * pr.delta);
    std::int64_t n = std::max<std::int64_t>(1, nudged_ceil(ratio));
    const double target = 1.0 - pr.epsilon;
    auto good = [&](std::int64_t m) { return fuzzy_geq(fidelity_singular(m, pr.delta), target); };
    int guard = 0;
    while (!good(n)) {
        ++n;
        if (++guard > 4) throw std::logic_error("tests_singular: correction diverged");
    }
    while (n > 1 && good(n - 1)) {
        --n;
        if (++guard > 4) throw std::logic_error("tests_singular: correction diverged");
    }
    return n;
}

// delta-scaled minimum conditional fidelity of the extremal mixture anchored
// at k bad copies: lambda{delta[1 + (N-k)nu] - lambda^k} / (nu(k nu + N lambda)).
inline double fidelity_numerator(std::int64_t n, double delta, double lambda, std::int64_t k) {
    if (n < 1) throw validation_error("n must be positive");
    if (!(lambda > 0.0 && lambda < 1.0)) throw validation_error("lambda must lie in (0, 1)");
    if (k < 0 || k > n + 1) throw validation_error("k must lie in [0, n + 1]");
    const double nu = 1.0 - lambda;
    const double lam_k = pow_via_log(lambda, static_cast<double>(k));
    const double num = lambda * (delta * (1.0 + static_cast<double>(n - k) * nu) - lam_k);
    const double den = nu * (static_cast<double>(k) * nu + static_cast<double>(n) * lambda);
    return num / den;
}

namespace detail {

// Pass probability of the configuration with k non-target copies among N+1,
// ((N+1-k) lambda^k + k lambda^(k-1)) / (N+1); the feasibility test behind
// the extremal-k search.
inline double homogeneous_config_pass(std::int64_t n, double lambda, std::int64_t k) {
    const double lam_k = pow_via_log(lambda, static_cast<double>(k));
    double sum = static_cast<double>(n + 1 - k) * lam_k;
    if (k > 0) sum += static_cast<double>(k) * pow_via_log(lambda, static_cast<double>(k - 1));
    return sum / static_cast<double>(n + 1);
}

}  // namespace detail

// Minimum conditional fidelity F(N, delta, lambda) over all adversary states
// passing with probability at least delta.
inline FidelityResult fidelity_homogeneous(std::int64_t n, double delta, double lambda) {
    if (n < 1) throw validation_error("n must be positive");
    if (!(delta > 0.0 && delta <= 1.0)) throw validation_error("delta must lie in (0, 1]");
    if (!(lambda >= 0.0 && lambda < 1.0)) throw validation_error("lambda must lie in [0, 1)");
    FidelityResult out;
    if (lambda == 0.0) {
        out.fidelity = fidelity_singular(n, delta);
        return out;
    }
    if (delta <= pow_via_log(lambda, static_cast<double>(n))) {
        out.zero_regime = true;
        return out;
    }
    const std::int64_t anchor = nudged_floor(std::log(delta) / std::log(lambda));
    const std::int64_t k_star = detail::largest_satisfying(
        std::int64_t{0}, n, anchor,
        [&](std::int64_t k) { return detail::homogeneous_config_pass(n, lambda, k) >= delta; });
    out.k_star = k_star;
    out.fidelity = std::clamp(fidelity_numerator(n, delta, lambda, k_star) / delta, 0.0, 1.0);
    return out;
}

// Real-valued test count of the candidate anchored at k; the exact N is the
// ceiling of its minimum over k.
inline double fractional_tests(const Precision& pr, double lambda, std::int64_t k) {
    if (!(lambda > 0.0 && lambda < 1.0)) throw validation_error("lambda must lie in (0, 1)");
    if (k < 0) throw validation_error("k must be nonnegative");
    const double eps = pr.epsilon;
    const double delta = pr.delta;
    const double nu = 1.0 - lambda;
    const double fid = 1.0 - eps;
    const double num = static_cast<double>(k) * nu * nu * delta * fid +
                       pow_via_log(lambda, static_cast<double>(k + 1)) +
                       lambda * delta * (static_cast<double>(k) * nu - 1.0);
    return num / (lambda * nu * delta * eps);
}

// High-precision approximation (lambda*eps*ln(1/lambda))^-1 * ln(1/delta).
inline double tests_homogeneous_approx(const Precision& pr, double lambda) {
    if (!(lambda > 0.0 && lambda < 1.0)) throw validation_error("lambda must lie in (0, 1)");
    return std::log(pr.delta) / (lambda * pr.epsilon * std::log(lambda));
}

// Exact minimal test count plus the sandwich bounds. The closed form supplies
// the candidate; minimality against fidelity_homogeneous is what ships.
inline HomogeneousPlan tests_homogeneous(const Precision& pr, double lambda) {
    if (!(lambda >= 0.0 && lambda < 1.0)) throw validation_error("lambda must lie in [0, 1)");
    HomogeneousPlan plan;
    if (lambda == 0.0) {
        plan.n_exact = tests_singular(pr);
        plan.k_opt = 0;
        plan.n_lower = plan.n_exact;
        plan.n_upper = plan.n_exact;
        plan.n_approx = (1.0 - pr.delta) / (pr.epsilon * pr.delta);
        return plan;
    }
    const double eps = pr.epsilon;
    const double delta = pr.delta;
    const double fid = 1.0 - eps;
    const double nu = 1.0 - lambda;
    const double log_lambda = std::log(lambda);

    // k_opt: largest k with delta <= lambda^k / (F + lambda*eps)
    const double rhs = delta * (fid + lambda * eps);
    const std::int64_t k_anchor = nudged_floor(std::log(rhs) / log_lambda);
    const std::int64_t k_opt = detail::largest_satisfying(
        std::int64_t{0}, k_anchor + 8, k_anchor,
        [&](std::int64_t k) { return pow_via_log(lambda, static_cast<double>(k)) >= rhs; });
    plan.k_opt = k_opt;

    std::int64_t n = std::max<std::int64_t>(1, nudged_ceil(fractional_tests(pr, lambda, k_opt)));
    auto good = [&](std::int64_t m) {
        return fuzzy_geq(fidelity_homogeneous(m, delta, lambda).fidelity, fid);
    };
    int guard = 0;
    while (!good(n)) {
        ++n;
        if (++guard > 4) throw std::logic_error("tests_homogeneous: correction diverged");
    }
    while (n > 1 && good(n - 1)) {
        --n;
        if (++guard > 4) throw std::logic_error("tests_homogeneous: correction diverged");
    }
    plan.n_exact = n;

    const std::int64_t k_minus = nudged_floor(std::log(delta) / log_lambda);
    plan.n_lower =
        k_minus + nudged_ceil(static_cast<double>(k_minus) * fid / (lambda * eps));
    plan.n_approx = std::log(delta) / (lambda * eps * log_lambda);
    plan.n_upper =
        nudged_ceil(plan.n_approx - nu * static_cast<double>(k_minus) / lambda);
    return plan;
}

}  // namespace qsv

#endif
