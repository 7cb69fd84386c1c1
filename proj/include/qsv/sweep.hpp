#ifndef QSV_SWEEP_HPP
#define QSV_SWEEP_HPP

#include <charconv>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "qsv/adversarial_homogeneous.hpp"
#include "qsv/errors.hpp"
#include "qsv/hedging.hpp"
#include "qsv/parallel.hpp"

namespace qsv {

// CSV data behind the two figures: exact homogeneous test counts against the
// high-precision approximation (figure 1) and the hedged overhead ratio bound
// at p = nu/e (figure 2).

struct SweepGrid {
    int figure = 1;
    std::vector<double> strengths;  // lambdas (figure 1) or nus (figure 2)
    std::vector<double> epsilons;
    std::vector<double> deltas;
};

struct TestCountRow {
    double lambda = 0.0;
    double epsilon = 0.0;
    double delta = 0.0;
    std::int64_t n_exact = 0;
    std::int64_t n_lower = 0;
    std::int64_t n_upper = 0;
    double n_approx = 0.0;
};

struct OverheadRow {
    double nu = 0.0;
    double epsilon = 0.0;
    double delta = 0.0;
    double p = 0.0;
    double ratio_bound = 0.0;
    double nu_h = 0.0;
};

namespace detail {

inline void validate_grid(const SweepGrid& grid, int figure) {
    if (grid.figure != figure) throw validation_error("grid figure does not match the sweep");
    if (grid.strengths.empty() || grid.epsilons.empty() || grid.deltas.empty()) {
        throw validation_error("sweep grid lists must be nonempty");
    }
    for (double v : grid.strengths) {
        const bool ok = figure == 1 ? (v > 0.0 && v < 1.0) : (v > 0.0 && v <= 1.0);
        if (!ok) throw validation_error("sweep strengths out of range");
    }
    for (double v : grid.epsilons) {
        if (!(v > 0.0 && v < 1.0)) throw validation_error("sweep epsilons must lie in (0, 1)");
    }
    for (double v : grid.deltas) {
        if (!(v > 0.0 && v < 1.0)) throw validation_error("sweep deltas must lie in (0, 1)");
    }
}

// 17 significant digits, '.' decimal point, no locale.
inline std::string csv_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

}  // namespace detail

inline SweepGrid default_grid(int figure) {
    SweepGrid g;
    g.figure = figure;
    if (figure == 1) {
        g.strengths = {0.1, 0.2, 0.3, kInvE, 0.5, 0.6, 0.7, 0.8, 0.9};
        g.epsilons = {0.01, 0.001};
        g.deltas = {0.001};
    } else if (figure == 2) {
        for (int i = 1; i <= 20; ++i) g.strengths.push_back(i / 20.0);
        g.epsilons = {0.1, 0.01, 0.001, 0.0001};
        g.deltas = {0.1, 0.01, 0.001, 0.0001};
    } else {
        throw validation_error("figure must be 1 or 2");
    }
    return g;
}

inline std::vector<TestCountRow> sweep_test_counts(const SweepGrid& grid) {
    detail::validate_grid(grid, 1);
    std::vector<TestCountRow> rows(grid.strengths.size() * grid.epsilons.size() *
                                   grid.deltas.size());
    const std::int64_t total = static_cast<std::int64_t>(rows.size());
    const std::size_t per_lambda = grid.epsilons.size() * grid.deltas.size();
    parallel_chunks(total, [&](std::int64_t, std::int64_t begin, std::int64_t end) {
        for (std::int64_t idx = begin; idx < end; ++idx) {
            const std::size_t i = static_cast<std::size_t>(idx);
            const double lambda = grid.strengths[i / per_lambda];
            const std::size_t rem = i % per_lambda;
            const double eps = grid.epsilons[rem / grid.deltas.size()];
            const double delta = grid.deltas[rem % grid.deltas.size()];
            const Precision pr(eps, delta);
            const HomogeneousPlan plan = tests_homogeneous(pr, lambda);
            rows[i] = {lambda, eps,          delta,        plan.n_exact,
                       plan.n_lower, plan.n_upper, plan.n_approx};
        }
    });
    return rows;
}

inline std::vector<OverheadRow> sweep_overhead(const SweepGrid& grid) {
    detail::validate_grid(grid, 2);
    std::vector<OverheadRow> rows(grid.strengths.size() * grid.epsilons.size() *
                                  grid.deltas.size());
    const std::int64_t total = static_cast<std::int64_t>(rows.size());
    const std::size_t per_nu = grid.epsilons.size() * grid.deltas.size();
    parallel_chunks(total, [&](std::int64_t, std::int64_t begin, std::int64_t end) {
        for (std::int64_t idx = begin; idx < end; ++idx) {
            const std::size_t i = static_cast<std::size_t>(idx);
            const double nu = grid.strengths[i / per_nu];
            const std::size_t rem = i % per_nu;
            const double eps = grid.epsilons[rem / grid.deltas.size()];
            const double delta = grid.deltas[rem % grid.deltas.size()];
            const Precision pr(eps, delta);
            const double p = nu * kInvE;
            const double ratio = overhead_ratio_bound(pr, nu, 0.0, p);
            const double nu_h = nu * hedge_cost(p, nu, 0.0);
            rows[i] = {nu, eps, delta, p, ratio, nu_h};
        }
    });
    return rows;
}

inline void write_csv(std::ostream& out, const std::vector<TestCountRow>& rows) {
    out << "lambda,epsilon,delta,n_exact,n_lower,n_upper,n_approx\n";
    for (const auto& r : rows) {
        out << detail::csv_double(r.lambda) << ',' << detail::csv_double(r.epsilon) << ','
            << detail::csv_double(r.delta) << ',' << r.n_exact << ',' << r.n_lower << ','
            << r.n_upper << ',' << detail::csv_double(r.n_approx) << '\n';
    }
}

inline void write_csv(std::ostream& out, const std::vector<OverheadRow>& rows) {
    out << "nu,epsilon,delta,p,ratio_bound,nu_h\n";
    for (const auto& r : rows) {
        out << detail::csv_double(r.nu) << ',' << detail::csv_double(r.epsilon) << ','
            << detail::csv_double(r.delta) << ',' << detail::csv_double(r.p) << ','
            << detail::csv_double(r.ratio_bound) << ',' << detail::csv_double(r.nu_h) << '\n';
    }
}

}  // namespace qsv

#endif
