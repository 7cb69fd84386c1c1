#ifndef QSV_OPERATORS_HPP
#define QSV_OPERATORS_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "qsv/errors.hpp"
#include "qsv/spectrum.hpp"

namespace qsv {

// Operator ingestion: assembling a verification operator from test operators
// and extracting its eigenvalue profile. All planning math downstream needs
// only the profile, so this is a convenience path with a dimension guard.

inline constexpr std::int64_t kMaxOperatorDim = 4096;

struct TargetState {
    Eigen::VectorXcd amplitudes;

    explicit TargetState(Eigen::VectorXcd amps) : amplitudes(std::move(amps)) {
        if (amplitudes.size() < 2) throw validation_error("target state needs dimension >= 2");
        if (std::fabs(amplitudes.norm() - 1.0) > 1e-10) {
            throw validation_error("target state must have unit norm");
        }
    }
};

struct TestSpec {
    double probability = 0.0;
    Eigen::MatrixXcd matrix;
};

namespace detail {

inline void require_hermitian(const Eigen::MatrixXcd& m, double tol, const char* what) {
    if (m.rows() != m.cols()) throw validation_error(std::string(what) + " is not square");
    const double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (dev > tol) throw validation_error(std::string(what) + " is not Hermitian");
}

}  // namespace detail

// Omega = sum_l mu_l E_l. Each test must be Hermitian with spectrum inside
// [0, 1] (up to solver noise) and must accept the target exactly.
inline Eigen::MatrixXcd build_verification_operator(const std::vector<TestSpec>& tests,
                                                    const TargetState& target) {
    if (tests.empty()) throw validation_error("at least one test operator is required");
    const Eigen::Index dim = target.amplitudes.size();
    double prob_sum = 0.0;
    Eigen::MatrixXcd omega = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& t : tests) {
        if (!(t.probability > 0.0 && t.probability <= 1.0)) {
            throw validation_error("test probabilities must lie in (0, 1]");
        }
        if (t.matrix.rows() != dim || t.matrix.cols() != dim) {
            throw validation_error("test operator dimension does not match the target state");
        }
        detail::require_hermitian(t.matrix, 1e-10, "test operator");
        if ((t.matrix * target.amplitudes - target.amplitudes).norm() > 1e-8) {
            throw validation_error("test operator does not accept the target state");
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(t.matrix, Eigen::EigenvaluesOnly);
        const double lo = es.eigenvalues().minCoeff();
        const double hi = es.eigenvalues().maxCoeff();
        if (lo < -1e-8 || hi > 1.0 + 1e-8) {
            throw validation_error("test operator eigenvalues must lie in [0, 1]");
        }
        prob_sum += t.probability;
        omega += t.probability * t.matrix;
    }
    if (std::fabs(prob_sum - 1.0) > 1e-9) {
        throw validation_error("test probabilities must sum to 1");
    }
    omega = 0.5 * (omega + omega.adjoint().eval());  // scrub accumulation noise
    if ((omega * target.amplitudes - target.amplitudes).norm() > 1e-9) {
        throw validation_error("verification operator does not fix the target state");
    }
    return omega;
}

// Eigenvalue profile of a verification operator: clamped to [0, 1], grouped
// into distinct values, the target eigenvalue pinned to exactly 1. A top
// eigenvalue of multiplicity > 1 means a vanishing gap; such an operator
// cannot verify anything and is rejected.
inline Spectrum spectrum_from_operator(const Eigen::MatrixXcd& omega, const TargetState& target) {
    if (omega.rows() != target.amplitudes.size()) {
        throw validation_error("operator dimension does not match the target state");
    }
    if (omega.rows() > kMaxOperatorDim) {
        throw infeasible_error("operator dimension exceeds the ingestion guard");
    }
    detail::require_hermitian(omega, 1e-10, "verification operator");
    if ((omega * target.amplitudes - target.amplitudes).norm() > 1e-8) {
        throw validation_error("verification operator does not fix the target state");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(omega, Eigen::EigenvaluesOnly);
    std::vector<double> vals(es.eigenvalues().data(), es.eigenvalues().data() + omega.rows());
    std::sort(vals.begin(), vals.end(), std::greater<>());
    for (double v : vals) {
        if (v < -1e-8 || v > 1.0 + 1e-8) {
            throw validation_error("operator eigenvalue outside [0, 1]");
        }
    }
    for (double& v : vals) v = std::clamp(v, 0.0, 1.0);

    std::vector<SpectrumEntry> entries;
    std::size_t i = 0;
    while (i < vals.size()) {
        double sum = vals[i];
        std::int64_t count = 1;
        std::size_t j = i + 1;
        while (j < vals.size() &&
               vals[i] - vals[j] <= 1e-9 * std::max(1.0, std::fabs(vals[i]))) {
            sum += vals[j];
            ++count;
            ++j;
        }
        entries.push_back({sum / static_cast<double>(count), count});
        i = j;
    }
    if (entries.front().multiplicity != 1) {
        throw infeasible_error("top eigenvalue is degenerate: zero spectral gap, cannot verify");
    }
    entries.front().value = 1.0;
    return Spectrum::from_entries(std::move(entries));
}

}  // namespace qsv

#endif
