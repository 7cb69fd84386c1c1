#ifndef QSV_ADVERSARY_ORACLE_HPP
#define QSV_ADVERSARY_ORACLE_HPP

#include <cstdint>
#include <limits>
#include <vector>

#include "qsv/errors.hpp"
#include "qsv/spectrum.hpp"

namespace qsv {

// Brute-force ground truth, independent of every closed form: adversaries
// restricted to permutation-invariant mixtures of eigenbasis product
// configurations, minimized by a linear-fractional program over the mixture
// polytope. Products are formed by repeated multiplication (no exp/log, no
// division) so the two computation routes stay independent.

struct AdversaryConfiguration {
    std::vector<std::int64_t> counts;  // per distinct eigenvalue; counts[0] = target copies
    double pass_prob = 0.0;            // chance all N tested copies pass, untested slot uniform
    double fid_prob = 0.0;             // chance all pass AND the untested slot holds the target
};

struct OracleSupport {
    AdversaryConfiguration config;
    double weight = 0.0;
};

struct OracleResult {
    double min_fidelity = 0.0;
    std::vector<OracleSupport> support;  // at most two configurations
    double achieved_pass_prob = 0.0;
};

namespace detail {

inline double pow_repeat(double v, std::int64_t e) {
    double out = 1.0;
    for (std::int64_t i = 0; i < e; ++i) out *= v;
    return out;
}

}  // namespace detail

// All compositions of N+1 copies over the distinct eigenvalues, with pass and
// fidelity probabilities filled in. Guard: at most 4 distinct values, N <= 30
// for two values, N <= 8 beyond that.
inline std::vector<AdversaryConfiguration> enumerate_configurations(const Spectrum& spectrum,
                                                                    std::int64_t n) {
    const std::int64_t d = static_cast<std::int64_t>(spectrum.entries.size());
    if (n < 1) throw validation_error("n must be positive");
    if (d > 4) throw infeasible_error("oracle guard: more than 4 distinct eigenvalues");
    if (d <= 2 && n > 30) throw infeasible_error("oracle guard: n > 30 for a two-point spectrum");
    if (d > 2 && n > 8) throw infeasible_error("oracle guard: n > 8 for a 3- or 4-point spectrum");

    const std::vector<double> values = spectrum.values();
    const std::int64_t copies = n + 1;
    std::vector<AdversaryConfiguration> out;
    std::vector<std::int64_t> counts(static_cast<std::size_t>(d), 0);

    auto emit = [&]() {
        AdversaryConfiguration cfg;
        cfg.counts = counts;
        // pass_prob: pick the untested slot uniformly; the other N copies pass
        // independently with their eigenvalues (leave-one-out product).
        double pass = 0.0;
        for (std::int64_t i = 0; i < d; ++i) {
            if (counts[static_cast<std::size_t>(i)] == 0) continue;
            double prod = 1.0;
            for (std::int64_t j = 0; j < d; ++j) {
                const std::int64_t e = counts[static_cast<std::size_t>(j)] - (j == i ? 1 : 0);
                prod *= detail::pow_repeat(values[static_cast<std::size_t>(j)], e);
            }
            pass += static_cast<double>(counts[static_cast<std::size_t>(i)]) /
                    static_cast<double>(copies) * prod;
        }
        cfg.pass_prob = pass;
        double fid = static_cast<double>(counts[0]) / static_cast<double>(copies);
        for (std::int64_t j = 1; j < d; ++j) {
            fid *= detail::pow_repeat(values[static_cast<std::size_t>(j)],
                                      counts[static_cast<std::size_t>(j)]);
        }
        cfg.fid_prob = fid;
        out.push_back(std::move(cfg));
    };

    // compositions of `copies` into d ordered parts
    auto recurse = [&](auto&& self, std::int64_t slot, std::int64_t remaining) -> void {
        if (slot == d - 1) {
            counts[static_cast<std::size_t>(slot)] = remaining;
            emit();
            return;
        }
        for (std::int64_t c = 0; c <= remaining; ++c) {
            counts[static_cast<std::size_t>(slot)] = c;
            self(self, slot + 1, remaining - c);
        }
    };
    recurse(recurse, 0, copies);
    return out;
}

// Exact minimum of (sum q f) / (sum q p) subject to sum q p >= delta over the
// mixture polytope. The optimum sits on a vertex: either one feasible
// configuration, or a two-point mixture pinned to the active constraint.
inline OracleResult min_conditional_fidelity(const Spectrum& spectrum, std::int64_t n,
                                             double delta) {
    if (!(delta > 0.0 && delta <= 1.0)) throw validation_error("delta must lie in (0, 1]");
    const std::vector<AdversaryConfiguration> configs = enumerate_configurations(spectrum, n);

    double p_max = 0.0;
    for (const auto& c : configs) p_max = std::max(p_max, c.pass_prob);
    if (delta > p_max + 1e-12) {
        throw infeasible_error("delta exceeds the best achievable pass probability");
    }

    OracleResult best;
    best.min_fidelity = std::numeric_limits<double>::infinity();

    for (const auto& c : configs) {
        if (c.pass_prob <= 0.0 || c.pass_prob < delta - 1e-12) continue;
        const double value = c.fid_prob / c.pass_prob;
        if (value < best.min_fidelity) {
            best.min_fidelity = value;
            best.support = {{c, 1.0}};
            best.achieved_pass_prob = c.pass_prob;
        }
    }
    const std::size_t m = configs.size();
    for (std::size_t a = 0; a + 1 < m; ++a) {
        for (std::size_t b = a + 1; b < m; ++b) {
            const double pa = configs[a].pass_prob;
            const double pb = configs[b].pass_prob;
            if (!((pa - delta) * (pb - delta) < 0.0)) continue;
            const double q = (delta - pb) / (pa - pb);
            const double value =
                (q * configs[a].fid_prob + (1.0 - q) * configs[b].fid_prob) / delta;
            if (value < best.min_fidelity) {
                best.min_fidelity = value;
                best.support = {{configs[a], q}, {configs[b], 1.0 - q}};
                best.achieved_pass_prob = delta;
            }
        }
    }
    if (!(best.min_fidelity <= 1.0 + 1e-9)) {
        throw std::logic_error("min_conditional_fidelity: no feasible vertex found");
    }
    if (best.min_fidelity < 0.0) best.min_fidelity = 0.0;
    if (best.min_fidelity > 1.0) best.min_fidelity = 1.0;
    return best;
}

}  // namespace qsv

#endif
