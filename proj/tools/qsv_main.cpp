// qsv: planner / calculator / verifier for quantum-state-verification
// sample complexity. Subcommands: plan, fidelity, hedge, oracle, simulate,
// sweep, spectrum. Output is JSON (stable machine contract) or text lines.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qsv/operator_json.hpp"
#include "qsv/operators.hpp"
#include "qsv/qsv.hpp"

namespace {

using nlohmann::ordered_json;

struct StrategyFlags {
    std::optional<double> lambda;
    std::optional<double> beta;
    std::optional<double> tau;
    std::string spectrum_text;
    std::string operator_path;
};

struct ResolvedStrategy {
    std::optional<qsv::Spectrum> spectrum;  // full profile when available
    double beta = 0.0;
    double nu = 1.0;
    std::optional<double> tau;
    std::optional<double> lambda;  // set iff known homogeneous
};

void add_strategy_flags(CLI::App* cmd, StrategyFlags& f) {
    cmd->add_option("--lambda", f.lambda, "homogeneous non-target eigenvalue in [0,1)");
    cmd->add_option("--beta", f.beta, "second largest eigenvalue in [0,1)");
    cmd->add_option("--tau", f.tau, "smallest eigenvalue in [0,1), requires --beta");
    cmd->add_option("--spectrum", f.spectrum_text,
                    "eigenvalue profile, e.g. \"1:1,0.5:3,0.1:2\"");
    cmd->add_option("--operator", f.operator_path, "operator JSON file");
}

ResolvedStrategy resolve_strategy(const StrategyFlags& f) {
    const int sources = (f.lambda ? 1 : 0) + (f.beta ? 1 : 0) +
                        (!f.spectrum_text.empty() ? 1 : 0) +
                        (!f.operator_path.empty() ? 1 : 0);
    if (sources != 1) {
        throw qsv::validation_error(
            "exactly one strategy source among --lambda, --beta/--tau, --spectrum, --operator");
    }
    if (f.tau && !f.beta) {
        throw qsv::validation_error("--tau requires --beta");
    }
    ResolvedStrategy r;
    if (f.lambda) {
        r.spectrum = qsv::Spectrum::homogeneous(*f.lambda);
    } else if (f.beta) {
        if (!(*f.beta >= 0.0 && *f.beta < 1.0)) {
            throw qsv::validation_error("--beta must lie in [0, 1)");
        }
        r.beta = *f.beta;
        r.nu = 1.0 - r.beta;
        if (f.tau) {
            if (!(*f.tau >= 0.0 && *f.tau <= *f.beta)) {
                throw qsv::validation_error("--tau must lie in [0, beta]");
            }
            r.tau = *f.tau;
            if (*f.tau == *f.beta) r.lambda = *f.beta;
        }
        return r;
    } else if (!f.spectrum_text.empty()) {
        r.spectrum = qsv::Spectrum::parse(f.spectrum_text);
    } else {
        const qsv::OperatorFile file = qsv::load_operator_file(f.operator_path);
        const Eigen::MatrixXcd omega =
            qsv::build_verification_operator(file.tests, file.target);
        r.spectrum = qsv::spectrum_from_operator(omega, file.target);
    }
    const qsv::StrategySummary s = qsv::summarize(*r.spectrum);
    r.beta = s.beta;
    r.nu = s.nu;
    r.tau = s.tau;
    r.lambda = s.lambda;
    return r;
}

void flatten(const ordered_json& j, const std::string& prefix, std::ostream& out) {
    if (j.is_object()) {
        for (const auto& [key, value] : j.items()) {
            flatten(value, prefix.empty() ? key : prefix + "." + key, out);
        }
    } else {
        out << prefix << " = " << j.dump() << "\n";
    }
}

void emit(const ordered_json& j, const std::string& format) {
    if (format == "text") {
        flatten(j, "", std::cout);
    } else {
        std::cout << j.dump(2) << "\n";
    }
}

ordered_json hedge_report_json(const qsv::HedgeReport& hr) {
    ordered_json j;
    j["p"] = hr.p;
    j["beta_p"] = hr.beta_p;
    j["tau_p"] = hr.tau_p;
    j["h_value"] = hr.h_value;
    j["p_star"] = hr.p_star;
    j["p_star_max"] = hr.p_star_max;
    j["nu_h"] = hr.nu_h;
    j["n_bound"] = hr.n_bound;
    j["n_bound_secondary"] = hr.n_bound_secondary;
    j["ratio_bound"] = hr.ratio_bound;
    j["theorem_choice"] = hr.theorem_choice;
    return j;
}

ordered_json homogeneous_plan_json(const qsv::HomogeneousPlan& plan) {
    ordered_json j;
    j["n_exact"] = plan.n_exact;
    j["k_opt"] = plan.k_opt;
    j["n_lower"] = plan.n_lower;
    j["n_upper"] = plan.n_upper;
    j["n_approx"] = plan.n_approx;
    return j;
}

std::vector<double> parse_double_list(const std::string& text, const char* what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw qsv::validation_error(std::string("cannot parse ") + what + " entry '" +
                                        item + "'");
        }
    }
    if (out.empty()) throw qsv::validation_error(std::string(what) + " list is empty");
    return out;
}

int run(int argc, char** argv) {
    CLI::App app{"quantum-state-verification sample-complexity planner"};
    app.require_subcommand(1);
    std::string format = "json";
    app.add_option("--format", format, "output format: json or text")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();

    // plan
    auto* plan_cmd = app.add_subcommand("plan", "minimal test counts for a precision target");
    std::string scenario;
    double plan_eps = 0.0, plan_delta = 0.0;
    std::string hedge_choice = "none";
    StrategyFlags plan_src;
    plan_cmd->add_option("--scenario", scenario, "nonadversarial or adversarial")
        ->required()
        ->check(CLI::IsMember({"nonadversarial", "adversarial"}));
    plan_cmd->add_option("--epsilon", plan_eps, "infidelity budget in (0,1)")->required();
    plan_cmd->add_option("--delta", plan_delta, "significance level in (0,1)")->required();
    plan_cmd->add_option("--hedge", hedge_choice, "none, auto, or p=<value>");
    add_strategy_flags(plan_cmd, plan_src);

    // fidelity
    auto* fid_cmd = app.add_subcommand("fidelity", "worst-case fidelity after n passed tests");
    std::int64_t fid_n = 0;
    double fid_delta = 0.0;
    StrategyFlags fid_src;
    fid_cmd->add_option("--n", fid_n, "number of tests")->required();
    fid_cmd->add_option("--delta", fid_delta, "pass-probability floor in (0,1]")->required();
    add_strategy_flags(fid_cmd, fid_src);

    // hedge
    auto* hedge_cmd = app.add_subcommand("hedge", "optimal trivial-test probability and costs");
    double hedge_nu = 0.0, hedge_tau = 0.0;
    hedge_cmd->add_option("--nu", hedge_nu, "spectral gap in (0,1]")->required();
    hedge_cmd->add_option("--tau", hedge_tau, "smallest eigenvalue in [0,1)")->required();

    // oracle
    auto* oracle_cmd = app.add_subcommand("oracle", "brute-force adversary minimum fidelity");
    std::int64_t oracle_n = 0;
    double oracle_delta = 0.0;
    StrategyFlags oracle_src;
    oracle_cmd->add_option("--n", oracle_n, "number of tests")->required();
    oracle_cmd->add_option("--delta", oracle_delta, "pass-probability floor in (0,1]")
        ->required();
    add_strategy_flags(oracle_cmd, oracle_src);

    // simulate
    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo validation runs");
    std::string sim_mode;
    std::int64_t sim_n = 0, sim_trials = 0;
    std::uint64_t sim_seed = 0;
    double sim_delta = 0.0;
    std::string sim_infidelity;
    StrategyFlags sim_src;
    sim_cmd->add_option("--mode", sim_mode, "iid or adversary")
        ->required()
        ->check(CLI::IsMember({"iid", "adversary"}));
    sim_cmd->add_option("--n", sim_n, "number of tests")->required();
    sim_cmd->add_option("--trials", sim_trials, "number of trials")->required();
    sim_cmd->add_option("--seed", sim_seed, "random seed");
    sim_cmd->add_option("--infidelity", sim_infidelity,
                        "iid mode: per-copy infidelity, single value or comma list");
    sim_cmd->add_option("--delta", sim_delta, "adversary mode: pass-probability floor");
    add_strategy_flags(sim_cmd, sim_src);

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "figure data as CSV");
    int sweep_figure = 0;
    std::string sweep_out;
    std::string sweep_lambdas, sweep_nus, sweep_epsilons, sweep_deltas;
    sweep_cmd->add_option("--figure", sweep_figure, "1 (test counts) or 2 (overhead)")
        ->required()
        ->check(CLI::IsMember({1, 2}));
    sweep_cmd->add_option("--out", sweep_out, "output CSV path")->required();
    sweep_cmd->add_option("--lambdas", sweep_lambdas, "figure 1 lambda list");
    sweep_cmd->add_option("--nus", sweep_nus, "figure 2 nu list");
    sweep_cmd->add_option("--epsilons", sweep_epsilons, "epsilon list");
    sweep_cmd->add_option("--deltas", sweep_deltas, "delta list");

    // spectrum
    auto* spec_cmd = app.add_subcommand("spectrum", "eigenvalue profile of an operator file");
    std::string spec_operator;
    spec_cmd->add_option("--operator", spec_operator, "operator JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);  // prints help text or the parse error
        return code == 0 ? 0 : 2;
    }

    if (*plan_cmd) {
        const qsv::Precision pr(plan_eps, plan_delta);
        const ResolvedStrategy strat = resolve_strategy(plan_src);
        ordered_json out;
        out["command"] = "plan";
        out["scenario"] = scenario;
        out["epsilon"] = pr.epsilon;
        out["delta"] = pr.delta;
        if (scenario == "nonadversarial") {
            if (!(strat.nu > 0.0)) {
                throw qsv::infeasible_error("zero spectral gap: strategy cannot verify");
            }
            const qsv::NonadversarialPlan p = qsv::tests_needed_nonadversarial(strat.nu, pr);
            out["nu"] = strat.nu;
            out["n_exact"] = p.n_exact;
            out["n_upper"] = p.n_upper;
            out["method"] = "exact";
            emit(out, format);
            return 0;
        }
        // adversarial
        std::optional<double> explicit_p;
        bool hedged = false;
        if (hedge_choice == "auto") {
            hedged = true;
        } else if (hedge_choice.rfind("p=", 0) == 0) {
            hedged = true;
            try {
                explicit_p = std::stod(hedge_choice.substr(2));
            } catch (const std::exception&) {
                throw qsv::validation_error("cannot parse --hedge " + hedge_choice);
            }
        } else if (hedge_choice != "none") {
            throw qsv::validation_error("--hedge must be none, auto, or p=<value>");
        }
        out["beta"] = strat.beta;
        out["nu"] = strat.nu;
        if (strat.tau) out["tau"] = *strat.tau;
        if (!hedged) {
            if (strat.lambda) {
                out["lambda"] = *strat.lambda;
                const qsv::HomogeneousPlan p = qsv::tests_homogeneous(pr, *strat.lambda);
                out.update(homogeneous_plan_json(p));
                out["method"] = *strat.lambda == 0.0 ? "singular-exact" : "homogeneous-exact";
            } else if (strat.tau && *strat.tau > 0.0) {
                const qsv::NonsingularSummary s =
                    qsv::nonsingular_summary(strat.beta, *strat.tau);
                const qsv::NonsingularTestBounds b = qsv::tests_bounds_nonsingular(pr, s);
                out["beta_tilde"] = s.beta_tilde;
                out["h"] = s.h;
                out["n_lower"] = b.n_lower;
                out["n_upper_strict"] = b.n_upper_strict;
                out["n_approx"] = b.n_approx;
                out["n_upper_universal"] = qsv::tests_upper_bound_general(pr, strat.nu);
                out["method"] = "nonsingular-bounds";
            } else {
                out["n_upper_universal"] = qsv::tests_upper_bound_general(pr, strat.nu);
                out["singular"] = !strat.tau || *strat.tau == 0.0;
                out["method"] = "universal-bound";
            }
            emit(out, format);
            return 0;
        }
        // hedged plan; unknown tau falls back to the conservative tau = 0
        const bool tau_known = strat.tau.has_value();
        const double tau = strat.tau.value_or(0.0);
        const qsv::HedgeReport hr = qsv::hedged_plan(pr, strat.nu, tau, explicit_p);
        out["tau_assumed_zero"] = !tau_known;
        out["hedge"] = hedge_report_json(hr);
        if (strat.lambda) {
            const double lambda_p = hr.p + (1.0 - hr.p) * *strat.lambda;
            const qsv::HomogeneousPlan p = qsv::tests_homogeneous(pr, lambda_p);
            ordered_json hj = homogeneous_plan_json(p);
            hj["lambda_p"] = lambda_p;
            out["hedged_exact"] = hj;
            out["method"] = "hedged-exact";
        } else {
            const qsv::NonsingularSummary s = qsv::nonsingular_summary(hr.beta_p, hr.tau_p);
            const qsv::NonsingularTestBounds b = qsv::tests_bounds_nonsingular(pr, s);
            ordered_json hb;
            hb["beta_tilde"] = s.beta_tilde;
            hb["h"] = s.h;
            hb["n_lower"] = b.n_lower;
            hb["n_upper_strict"] = b.n_upper_strict;
            hb["n_approx"] = b.n_approx;
            out["hedged_bounds"] = hb;
            out["method"] = "hedged-bounds";
        }
        emit(out, format);
        return 0;
    }

    if (*fid_cmd) {
        const ResolvedStrategy strat = resolve_strategy(fid_src);
        ordered_json out;
        out["command"] = "fidelity";
        out["n"] = fid_n;
        out["delta"] = fid_delta;
        if (strat.lambda) {
            const qsv::FidelityResult r = qsv::fidelity_homogeneous(fid_n, fid_delta, *strat.lambda);
            out["lambda"] = *strat.lambda;
            out["fidelity"] = r.fidelity;
            if (r.k_star) out["k_star"] = *r.k_star;
            out["zero_regime"] = r.zero_regime;
        } else {
            out["nu"] = strat.nu;
            const qsv::GeneralFidelityBound g =
                qsv::fidelity_lower_bound_general(fid_n, fid_delta, strat.nu);
            ordered_json t4;
            t4["bound"] = g.bound;
            t4["bound_clamped"] = std::max(0.0, g.bound);
            t4["clamped"] = g.bound < 0.0;
            t4["saturated"] = g.saturated;
            out["universal_bound"] = t4;
            if (strat.tau && *strat.tau > 0.0) {
                const qsv::NonsingularSummary s =
                    qsv::nonsingular_summary(strat.beta, *strat.tau);
                out["nonsingular_bound"] =
                    qsv::fidelity_lower_bound_nonsingular(fid_n, fid_delta, s);
            }
        }
        emit(out, format);
        return 0;
    }

    if (*hedge_cmd) {
        if (!(hedge_nu > 0.0 && hedge_nu <= 1.0)) {
            throw qsv::validation_error("--nu must lie in (0, 1]");
        }
        if (!(hedge_tau >= 0.0 && hedge_tau <= 1.0 - hedge_nu + 1e-12)) {
            throw qsv::validation_error("--tau must lie in [0, 1 - nu]");
        }
        ordered_json out;
        out["command"] = "hedge";
        out["nu"] = hedge_nu;
        out["tau"] = hedge_tau;
        const double ps = qsv::p_star(hedge_nu, hedge_tau);
        const double ps_max = qsv::p_star(hedge_nu, 0.0);
        const double p_auto = hedge_nu * qsv::kInvE;
        out["p_star"] = ps;
        out["p_star_max"] = ps_max;
        out["p_auto"] = p_auto;
        out["h_at_p_star"] = qsv::hedge_cost(ps, hedge_nu, hedge_tau);
        out["h_at_auto"] = qsv::hedge_cost(p_auto, hedge_nu, hedge_tau);
        out["nu_h"] = hedge_nu * qsv::hedge_cost(p_auto, hedge_nu, 0.0);
        emit(out, format);
        return 0;
    }

    if (*oracle_cmd) {
        const ResolvedStrategy strat = resolve_strategy(oracle_src);
        if (!strat.spectrum) {
            throw qsv::validation_error(
                "oracle needs a full spectrum (--lambda, --spectrum, or --operator)");
        }
        const qsv::OracleResult r =
            qsv::min_conditional_fidelity(*strat.spectrum, oracle_n, oracle_delta);
        ordered_json out;
        out["command"] = "oracle";
        out["n"] = oracle_n;
        out["delta"] = oracle_delta;
        out["spectrum"] = strat.spectrum->format();
        out["min_fidelity"] = r.min_fidelity;
        out["achieved_pass_prob"] = r.achieved_pass_prob;
        ordered_json support = ordered_json::array();
        for (const auto& s : r.support) {
            ordered_json cfg;
            cfg["counts"] = s.config.counts;
            cfg["weight"] = s.weight;
            cfg["pass_prob"] = s.config.pass_prob;
            cfg["fid_prob"] = s.config.fid_prob;
            support.push_back(cfg);
        }
        out["support"] = support;
        emit(out, format);
        return 0;
    }

    if (*sim_cmd) {
        const ResolvedStrategy strat = resolve_strategy(sim_src);
        ordered_json out;
        out["command"] = "simulate";
        out["mode"] = sim_mode;
        out["n"] = sim_n;
        out["trials"] = sim_trials;
        out["seed"] = sim_seed;
        qsv::SimConfig cfg;
        cfg.n = sim_n;
        cfg.trials = sim_trials;
        cfg.seed = sim_seed;
        if (sim_mode == "iid") {
            if (sim_infidelity.empty()) {
                throw qsv::validation_error("iid mode requires --infidelity");
            }
            std::vector<double> eps = parse_double_list(sim_infidelity, "--infidelity");
            if (eps.size() == 1) eps.assign(static_cast<std::size_t>(sim_n), eps[0]);
            cfg.mode = qsv::SimConfig::Mode::iid;
            cfg.per_copy_infidelities = std::move(eps);
            qsv::StrategySummary summary;
            summary.beta = strat.beta;
            summary.nu = strat.nu;
            summary.tau = strat.tau.value_or(0.0);
            const qsv::SimReport rep = qsv::simulate_iid(summary, cfg);
            out["nu"] = strat.nu;
            out["predicted_rate"] = rep.predicted_rate;
            out["acceptances"] = rep.acceptances;
            out["empirical_rate"] = rep.empirical_rate;
            out["z_score"] = rep.z_score;
        } else {
            if (!strat.spectrum) {
                throw qsv::validation_error(
                    "adversary mode needs a full spectrum (--lambda, --spectrum, or --operator)");
            }
            if (!(sim_delta > 0.0 && sim_delta <= 1.0)) {
                throw qsv::validation_error("adversary mode requires --delta in (0, 1]");
            }
            const qsv::OracleResult oracle =
                qsv::min_conditional_fidelity(*strat.spectrum, sim_n, sim_delta);
            cfg.mode = qsv::SimConfig::Mode::adversary;
            cfg.mixture = oracle.support;
            const qsv::SimReport rep = qsv::simulate_adversary(*strat.spectrum, cfg);
            out["delta"] = sim_delta;
            out["oracle_fidelity"] = oracle.min_fidelity;
            out["predicted_rate"] = rep.predicted_rate;
            out["acceptances"] = rep.acceptances;
            out["empirical_rate"] = rep.empirical_rate;
            out["z_score"] = rep.z_score;
            if (rep.conditional_fidelity) {
                out["conditional_fidelity"] = *rep.conditional_fidelity;
            }
        }
        emit(out, format);
        return 0;
    }

    if (*sweep_cmd) {
        qsv::SweepGrid grid = qsv::default_grid(sweep_figure);
        if (sweep_figure == 1 && !sweep_lambdas.empty()) {
            grid.strengths = parse_double_list(sweep_lambdas, "--lambdas");
        }
        if (sweep_figure == 2 && !sweep_nus.empty()) {
            grid.strengths = parse_double_list(sweep_nus, "--nus");
        }
        if (!sweep_epsilons.empty()) {
            grid.epsilons = parse_double_list(sweep_epsilons, "--epsilons");
        }
        if (!sweep_deltas.empty()) {
            grid.deltas = parse_double_list(sweep_deltas, "--deltas");
        }
        std::ofstream file(sweep_out, std::ios::binary);  // LF line endings
        if (!file) throw qsv::validation_error("cannot open output file: " + sweep_out);
        std::size_t rows = 0;
        if (sweep_figure == 1) {
            const auto data = qsv::sweep_test_counts(grid);
            qsv::write_csv(file, data);
            rows = data.size();
        } else {
            const auto data = qsv::sweep_overhead(grid);
            qsv::write_csv(file, data);
            rows = data.size();
        }
        ordered_json out;
        out["command"] = "sweep";
        out["figure"] = sweep_figure;
        out["rows"] = rows;
        out["out"] = sweep_out;
        emit(out, format);
        return 0;
    }

    if (*spec_cmd) {
        const qsv::OperatorFile file = qsv::load_operator_file(spec_operator);
        const Eigen::MatrixXcd omega =
            qsv::build_verification_operator(file.tests, file.target);
        const qsv::Spectrum sp = qsv::spectrum_from_operator(omega, file.target);
        const qsv::StrategySummary s = qsv::summarize(sp);
        ordered_json out;
        out["command"] = "spectrum";
        out["dimension"] = sp.dim;
        ordered_json entries = ordered_json::array();
        for (const auto& e : sp.entries) {
            entries.push_back(ordered_json::array({e.value, e.multiplicity}));
        }
        out["entries"] = entries;
        out["spectrum"] = sp.format();
        ordered_json summary;
        summary["beta"] = s.beta;
        summary["nu"] = s.nu;
        summary["tau"] = s.tau;
        summary["homogeneous"] = s.homogeneous;
        if (s.lambda) summary["lambda"] = *s.lambda;
        out["summary"] = summary;
        emit(out, format);
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const qsv::validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const qsv::infeasible_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
