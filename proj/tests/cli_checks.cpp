// End-to-end checks of the qsv binary: exit codes, JSON shape, bit-exact
// numeric round-trips. Takes the binary path as argv[1].

#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "qsv/adversarial_homogeneous.hpp"
#include "qsv/hedging.hpp"
#include "qsv/nonadversarial.hpp"

namespace {

std::string g_binary;
int g_failures = 0;

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = g_binary + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    std::string output;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) throw std::runtime_error("popen failed");
    while (std::fgets(buf.data(), static_cast<int>(buf.size()), pipe)) {
        output += buf.data();
    }
    const int status = pclose(pipe);
    RunResult r;
    r.output = output;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

void expect(bool cond, const std::string& what) {
    if (cond) {
        std::cout << "ok: " << what << "\n";
    } else {
        std::cout << "FAILED: " << what << "\n";
        ++g_failures;
    }
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: qsv_cli_checks <path-to-qsv>\n";
        return 2;
    }
    g_binary = argv[1];

    // worked plan: adversarial homogeneous
    {
        const RunResult r =
            run_cli("plan --scenario adversarial --epsilon 0.1 --delta 0.1 --lambda 0.5");
        expect(r.exit_code == 0, "adversarial plan exits 0");
        const auto j = nlohmann::json::parse(r.output);
        expect(j["n_exact"] == 62, "adversarial plan n_exact = 62");
        expect(j["k_opt"] == 3, "adversarial plan k_opt = 3");
        expect(j["n_lower"] == 57 && j["n_upper"] == 64, "sandwich 57/64");
        // bit-exact numeric round-trip against the library value
        const qsv::HomogeneousPlan plan =
            qsv::tests_homogeneous(qsv::Precision(0.1, 0.1), 0.5);
        expect(j["n_approx"].get<double>() == plan.n_approx,
               "n_approx round-trips bit-exactly");
    }

    // worked plan: nonadversarial
    {
        const RunResult r = run_cli(
            "plan --scenario nonadversarial --epsilon 0.01 --delta 0.01 --beta 0.5");
        expect(r.exit_code == 0, "nonadversarial plan exits 0");
        const auto j = nlohmann::json::parse(r.output);
        expect(j["n_exact"] == 919, "nonadversarial n_exact = 919");
        expect(j["n_upper"] == 922, "nonadversarial n_upper = 922");
    }

    // worked fidelity
    {
        const RunResult r = run_cli("fidelity --n 2 --delta 0.8 --lambda 0.5");
        expect(r.exit_code == 0, "fidelity exits 0");
        const auto j = nlohmann::json::parse(r.output);
        expect(std::fabs(j["fidelity"].get<double>() - 0.75) <= 1e-12, "fidelity = 0.75");
        expect(j["fidelity"].get<double>() ==
                   qsv::fidelity_homogeneous(2, 0.8, 0.5).fidelity,
               "fidelity round-trips bit-exactly");
        expect(j["k_star"] == 0, "k_star = 0");
    }

    // hedge report and bit-exact round-trip of a nontrivial double
    {
        const RunResult r = run_cli("hedge --nu 0.8 --tau 0.2");
        expect(r.exit_code == 0, "hedge exits 0");
        const auto j = nlohmann::json::parse(r.output);
        expect(j["p_star"].get<double>() == qsv::p_star(0.8, 0.2),
               "p_star round-trips bit-exactly");
        expect(j["nu_h"].get<double>() ==
                   0.8 * qsv::hedge_cost(0.8 * qsv::kInvE, 0.8, 0.0),
               "nu_h round-trips bit-exactly");
    }

    // oracle
    {
        const RunResult r = run_cli("oracle --n 2 --delta 0.8 --lambda 0.5");
        expect(r.exit_code == 0, "oracle exits 0");
        const auto j = nlohmann::json::parse(r.output);
        expect(std::fabs(j["min_fidelity"].get<double>() - 0.75) < 1e-12,
               "oracle min_fidelity = 0.75");
        expect(j["support"].size() <= 2, "oracle support <= 2");
    }

    // simulate (small, deterministic)
    {
        const RunResult r = run_cli(
            "simulate --mode iid --n 10 --trials 20000 --seed 42 --infidelity 0.1 "
            "--lambda 0.5");
        expect(r.exit_code == 0, "simulate iid exits 0");
        const auto j = nlohmann::json::parse(r.output);
        expect(std::fabs(j["z_score"].get<double>()) <= 4.0, "simulate iid |z| <= 4");
        const RunResult again = run_cli(
            "simulate --mode iid --n 10 --trials 20000 --seed 42 --infidelity 0.1 "
            "--lambda 0.5");
        expect(again.output == r.output, "simulate is reproducible for a fixed seed");
    }
    {
        const RunResult r = run_cli(
            "simulate --mode adversary --n 2 --delta 0.8 --trials 50000 --seed 99 "
            "--lambda 0.5");
        expect(r.exit_code == 0, "simulate adversary exits 0");
        const auto j = nlohmann::json::parse(r.output);
        expect(std::fabs(j["conditional_fidelity"].get<double>() - 0.75) < 0.01,
               "simulate adversary tracks the oracle fidelity");
    }

    // sweep writes CSV
    {
        const std::string path = "/tmp/qsv_cli_fig1.csv";
        const RunResult r = run_cli("sweep --figure 1 --out " + path +
                                    " --lambdas 0.5 --epsilons 0.1 --deltas 0.1");
        expect(r.exit_code == 0, "sweep exits 0");
        std::ifstream csv(path);
        std::string header, row;
        std::getline(csv, header);
        std::getline(csv, row);
        expect(header == "lambda,epsilon,delta,n_exact,n_lower,n_upper,n_approx",
               "sweep CSV header");
        expect(row.find(",62,57,64,") != std::string::npos, "sweep CSV worked row");
        std::remove(path.c_str());
    }

    // spectrum from an operator file
    {
        const std::string path = "/tmp/qsv_cli_operator.json";
        {
            std::ofstream f(path);
            f << R"({"dimension": 2,
                     "target_state": [[1.0, 0.0], [0.0, 0.0]],
                     "tests": [
                       {"probability": 0.5, "matrix": [[[1,0],[0,0]],[[0,0],[1,0]]]},
                       {"probability": 0.5, "matrix": [[[1,0],[0,0]],[[0,0],[0,0]]]}
                     ]})";
        }
        const RunResult r = run_cli("spectrum --operator " + path);
        expect(r.exit_code == 0, "spectrum exits 0");
        const auto j = nlohmann::json::parse(r.output);
        expect(j["spectrum"] == "1:1,0.5:1", "spectrum string");
        expect(j["summary"]["homogeneous"] == true, "summary homogeneous");
        std::remove(path.c_str());
    }

    // auto hedging repairs singular spectra instead of failing
    {
        const RunResult r = run_cli(
            "plan --scenario adversarial --epsilon 0.1 --delta 0.1 --spectrum 1:1,0:3 "
            "--hedge auto");
        expect(r.exit_code == 0, "auto hedge on a singular spectrum exits 0");
        const auto j = nlohmann::json::parse(r.output);
        expect(j["method"] == "hedged-exact", "singular spectrum plans via hedged-exact");
    }

    // nonsingular bounds path with a scientific-notation delta
    {
        const RunResult r = run_cli(
            "plan --scenario adversarial --epsilon 0.01 --delta 1e-9 --beta 0.5 --tau 0.1");
        expect(r.exit_code == 0, "bounds plan with 1e-9 delta exits 0");
        const auto j = nlohmann::json::parse(r.output);
        expect(j["method"] == "nonsingular-bounds", "beta/tau source plans via bounds");
        expect(j["n_lower"] == 8919, "bounds plan n_lower");
        expect(j["n_approx"].get<double>() == 9000.0, "bounds plan n_approx");
        expect(j["n_upper_universal"] == 199999999800, "universal upper bound");
    }

    // explicit hedge probability outside the covered range is flagged, not refused
    {
        const RunResult r = run_cli(
            "plan --scenario adversarial --epsilon 0.1 --delta 0.1 "
            "--spectrum 1:1,0.5:2,0.1:1 --hedge p=0.25");
        expect(r.exit_code == 0, "explicit hedge exits 0");
        const auto j = nlohmann::json::parse(r.output);
        expect(j["method"] == "hedged-bounds", "inhomogeneous hedged plan uses bounds");
        expect(j["hedge"]["theorem_choice"] == false,
               "off-range hedge probability is flagged");
    }

    // text format mirrors json fields
    {
        const RunResult r =
            run_cli("--format text fidelity --n 2 --delta 0.8 --lambda 0.5");
        expect(r.exit_code == 0, "text format exits 0");
        expect(r.output.find("fidelity = 0.75") != std::string::npos,
               "text format lists fidelity");
    }

    // validation failures exit 2
    expect(run_cli("plan --scenario adversarial --epsilon 0.1 --delta 0.1").exit_code == 2,
           "missing strategy source exits 2");
    expect(run_cli("plan --scenario adversarial --epsilon 0.1 --delta 0.1 --lambda 0.5 "
                   "--beta 0.5")
                   .exit_code == 2,
           "conflicting strategy sources exit 2");
    expect(run_cli("plan --scenario adversarial --epsilon 0.1 --delta 0.1 --lambda 0.5 "
                   "--bogus 1")
                   .exit_code == 2,
           "unknown flag exits 2");
    expect(run_cli("fidelity --n 2 --delta 1.5 --lambda 0.5").exit_code == 2,
           "out-of-domain delta exits 2");
    expect(run_cli("plan --scenario nonadversarial --epsilon 2 --delta 0.1 --lambda 0.5")
                   .exit_code == 2,
           "out-of-domain epsilon exits 2");

    // infeasible / guard failures exit 3
    expect(run_cli("oracle --n 31 --delta 0.5 --lambda 0.5").exit_code == 3,
           "oracle copy guard exits 3");
    expect(run_cli("oracle --n 4 --delta 0.5 --spectrum 1:1,0.8:1,0.6:1,0.4:1,0.2:1")
                   .exit_code == 3,
           "oracle eigenvalue guard exits 3");

    std::cout << (g_failures == 0 ? "cli checks passed" : "cli checks FAILED") << "\n";
    return g_failures == 0 ? 0 : 1;
}
