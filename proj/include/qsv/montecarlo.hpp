#ifndef QSV_MONTECARLO_HPP
#define QSV_MONTECARLO_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "qsv/adversary_oracle.hpp"
#include "qsv/errors.hpp"
#include "qsv/parallel.hpp"
#include "qsv/rng.hpp"
#include "qsv/spectrum.hpp"

namespace qsv {

// Stochastic validation. Trials draw from the counter-based stream keyed by
// (seed, trial, draw); chunked execution merges integer tallies, so reports
// are identical for any worker count.

struct SimConfig {
    enum class Mode { iid, adversary };
    Mode mode = Mode::iid;
    std::vector<double> per_copy_infidelities;  // iid mode, one entry per test
    std::vector<OracleSupport> mixture;         // adversary mode
    std::int64_t n = 0;
    std::int64_t trials = 0;
    std::uint64_t seed = 0;
};

struct SimReport {
    std::int64_t trials = 0;
    std::int64_t acceptances = 0;
    double empirical_rate = 0.0;
    double predicted_rate = 0.0;
    double z_score = 0.0;
    std::optional<double> conditional_fidelity;  // adversary mode only
};

namespace detail {

inline double binomial_z(double empirical, double predicted, std::int64_t trials) {
    if (!(predicted > 0.0 && predicted < 1.0)) return 0.0;
    const double sigma = std::sqrt(predicted * (1.0 - predicted) / static_cast<double>(trials));
    return (empirical - predicted) / sigma;
}

}  // namespace detail

// Worst-case i.i.d. source: copy j passes with probability exactly
// 1 - nu * eps_j, the per-test optimum for a state of infidelity eps_j.
inline SimReport simulate_iid(const StrategySummary& summary, const SimConfig& cfg) {
    if (cfg.mode != SimConfig::Mode::iid) throw validation_error("config mode is not iid");
    if (cfg.n < 1) throw validation_error("n must be positive");
    if (cfg.trials < 1) throw validation_error("trials must be positive");
    if (static_cast<std::int64_t>(cfg.per_copy_infidelities.size()) != cfg.n) {
        throw validation_error("per-copy infidelity list must have length n");
    }
    std::vector<double> pass_prob;
    pass_prob.reserve(cfg.per_copy_infidelities.size());
    double predicted = 1.0;
    for (double eps : cfg.per_copy_infidelities) {
        if (!(eps >= 0.0 && eps < 1.0)) {
            throw validation_error("per-copy infidelities must lie in [0, 1)");
        }
        const double p = 1.0 - summary.nu * eps;
        pass_prob.push_back(p);
        predicted *= p;
    }

    const unsigned workers = worker_threads();
    std::vector<std::int64_t> accepted(workers == 0 ? 1 : workers, 0);
    parallel_chunks(cfg.trials, [&](std::int64_t chunk, std::int64_t begin, std::int64_t end) {
        std::int64_t local = 0;
        for (std::int64_t t = begin; t < end; ++t) {
            bool ok = true;
            for (std::int64_t j = 0; j < cfg.n; ++j) {
                if (uniform01(cfg.seed, static_cast<std::uint64_t>(t),
                              static_cast<std::uint64_t>(j)) >=
                    pass_prob[static_cast<std::size_t>(j)]) {
                    ok = false;
                    break;
                }
            }
            if (ok) ++local;
        }
        accepted[static_cast<std::size_t>(chunk)] = local;
    });
    std::int64_t total = 0;
    for (std::int64_t a : accepted) total += a;

    SimReport rep;
    rep.trials = cfg.trials;
    rep.acceptances = total;
    rep.empirical_rate = static_cast<double>(total) / static_cast<double>(cfg.trials);
    rep.predicted_rate = predicted;
    rep.z_score = detail::binomial_z(rep.empirical_rate, predicted, cfg.trials);
    return rep;
}

// Adversary draws a configuration from the mixture, a uniformly random
// untested slot, and per-copy Bernoulli outcomes with eigenvalue
// probabilities. Acceptance is sampled physically rather than read off the
// stored pass probabilities, keeping the check independent of the oracle's
// arithmetic.
inline SimReport simulate_adversary(const Spectrum& spectrum, const SimConfig& cfg) {
    if (cfg.mode != SimConfig::Mode::adversary) {
        throw validation_error("config mode is not adversary");
    }
    if (cfg.n < 1) throw validation_error("n must be positive");
    if (cfg.trials < 1) throw validation_error("trials must be positive");
    if (cfg.mixture.empty()) throw validation_error("adversary mixture is empty");

    const std::vector<double> values = spectrum.values();
    const std::int64_t d = static_cast<std::int64_t>(values.size());
    const std::int64_t copies = cfg.n + 1;
    double weight_sum = 0.0;
    double predicted = 0.0;
    for (const auto& s : cfg.mixture) {
        if (s.weight < 0.0) throw validation_error("mixture weights must be nonnegative");
        if (static_cast<std::int64_t>(s.config.counts.size()) != d) {
            throw validation_error("configuration counts do not match the spectrum");
        }
        std::int64_t total = 0;
        for (std::int64_t c : s.config.counts) total += c;
        if (total != copies) throw validation_error("configuration counts must sum to n + 1");
        weight_sum += s.weight;
        predicted += s.weight * s.config.pass_prob;
    }
    if (std::fabs(weight_sum - 1.0) > 1e-9) {
        throw validation_error("mixture weights must sum to 1");
    }

    struct Tally {
        std::int64_t accepted = 0;
        std::int64_t accepted_target = 0;
    };
    const unsigned workers = worker_threads();
    std::vector<Tally> tallies(workers == 0 ? 1 : workers);

    parallel_chunks(cfg.trials, [&](std::int64_t chunk, std::int64_t begin, std::int64_t end) {
        Tally local;
        for (std::int64_t t = begin; t < end; ++t) {
            const auto trial = static_cast<std::uint64_t>(t);
            // draw 0: configuration
            const double u_cfg = uniform01(cfg.seed, trial, 0);
            std::size_t ci = 0;
            double acc = 0.0;
            for (std::size_t i = 0; i < cfg.mixture.size(); ++i) {
                acc += cfg.mixture[i].weight;
                if (u_cfg < acc) {
                    ci = i;
                    break;
                }
                ci = i;  // weight roundoff: final bucket absorbs the tail
            }
            const auto& counts = cfg.mixture[ci].config.counts;
            // draw 1: untested slot, mapped to its eigenvalue bucket
            const double u_pos = uniform01(cfg.seed, trial, 1);
            std::int64_t slot = static_cast<std::int64_t>(u_pos * static_cast<double>(copies));
            if (slot >= copies) slot = copies - 1;
            std::int64_t untested_bucket = 0;
            std::int64_t prefix = 0;
            for (std::int64_t j = 0; j < d; ++j) {
                prefix += counts[static_cast<std::size_t>(j)];
                if (slot < prefix) {
                    untested_bucket = j;
                    break;
                }
            }
            // draws 2..n+1: one Bernoulli per tested copy
            bool ok = true;
            std::uint64_t draw = 2;
            for (std::int64_t j = 0; j < d && ok; ++j) {
                const std::int64_t tested =
                    counts[static_cast<std::size_t>(j)] - (j == untested_bucket ? 1 : 0);
                const double v = values[static_cast<std::size_t>(j)];
                for (std::int64_t m = 0; m < tested; ++m, ++draw) {
                    if (uniform01(cfg.seed, trial, draw) >= v) {
                        ok = false;
                        break;
                    }
                }
            }
            if (ok) {
                ++local.accepted;
                if (untested_bucket == 0) ++local.accepted_target;
            }
        }
        tallies[static_cast<std::size_t>(chunk)] = local;
    });

    Tally total;
    for (const auto& t : tallies) {
        total.accepted += t.accepted;
        total.accepted_target += t.accepted_target;
    }

    SimReport rep;
    rep.trials = cfg.trials;
    rep.acceptances = total.accepted;
    rep.empirical_rate = static_cast<double>(total.accepted) / static_cast<double>(cfg.trials);
    rep.predicted_rate = predicted;
    rep.z_score = detail::binomial_z(rep.empirical_rate, predicted, cfg.trials);
    if (total.accepted > 0) {
        rep.conditional_fidelity =
            static_cast<double>(total.accepted_target) / static_cast<double>(total.accepted);
    }
    return rep;
}

}  // namespace qsv

#endif
