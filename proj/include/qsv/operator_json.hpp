#ifndef QSV_OPERATOR_JSON_HPP
#define QSV_OPERATOR_JSON_HPP

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qsv/errors.hpp"
#include "qsv/operators.hpp"

namespace qsv {

// Operator file schema:
// { "dimension": d,
//   "target_state": [[re, im], ...],
//   "tests": [ { "probability": mu, "matrix": [[[re, im], ...], ...] }, ... ] }

struct OperatorFile {
    TargetState target;
    std::vector<TestSpec> tests;
};

namespace detail {

inline std::complex<double> parse_complex(const nlohmann::json& j, const char* where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw validation_error(std::string("expected [re, im] pair in ") + where);
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace detail

inline OperatorFile parse_operator_json(const nlohmann::json& doc) {
    if (!doc.is_object() || !doc.contains("dimension") || !doc.contains("target_state") ||
        !doc.contains("tests")) {
        throw validation_error("operator file needs dimension, target_state and tests");
    }
    if (!doc["dimension"].is_number_integer()) {
        throw validation_error("dimension must be an integer");
    }
    const auto dim = doc["dimension"].get<Eigen::Index>();
    if (dim < 2) throw validation_error("dimension must be at least 2");

    const auto& tgt = doc["target_state"];
    if (!tgt.is_array() || static_cast<Eigen::Index>(tgt.size()) != dim) {
        throw validation_error("target_state must list `dimension` amplitudes");
    }
    Eigen::VectorXcd amps(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        amps(i) = detail::parse_complex(tgt[static_cast<std::size_t>(i)], "target_state");
    }

    std::vector<TestSpec> tests;
    const auto& jtests = doc["tests"];
    if (!jtests.is_array() || jtests.empty()) {
        throw validation_error("tests must be a nonempty array");
    }
    for (const auto& jt : jtests) {
        if (!jt.is_object() || !jt.contains("probability") || !jt.contains("matrix")) {
            throw validation_error("each test needs probability and matrix");
        }
        TestSpec spec;
        if (!jt["probability"].is_number()) {
            throw validation_error("test probability must be a number");
        }
        spec.probability = jt["probability"].get<double>();
        const auto& jm = jt["matrix"];
        if (!jm.is_array() || static_cast<Eigen::Index>(jm.size()) != dim) {
            throw validation_error("test matrix must have `dimension` rows");
        }
        spec.matrix.resize(dim, dim);
        for (Eigen::Index r = 0; r < dim; ++r) {
            const auto& row = jm[static_cast<std::size_t>(r)];
            if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim) {
                throw validation_error("test matrix rows must have `dimension` entries");
            }
            for (Eigen::Index c = 0; c < dim; ++c) {
                spec.matrix(r, c) =
                    detail::parse_complex(row[static_cast<std::size_t>(c)], "test matrix");
            }
        }
        tests.push_back(std::move(spec));
    }
    return OperatorFile{TargetState(std::move(amps)), std::move(tests)};
}

inline OperatorFile load_operator_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open operator file: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw validation_error(std::string("operator file is not valid JSON: ") + e.what());
    }
    return parse_operator_json(doc);
}

}  // namespace qsv

#endif
