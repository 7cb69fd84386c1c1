#ifndef QSV_SPECTRUM_HPP
#define QSV_SPECTRUM_HPP

#include <charconv>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qsv/errors.hpp"
#include "qsv/numeric.hpp"

namespace qsv {

struct SpectrumEntry {
    double value = 0.0;
    std::int64_t multiplicity = 0;
};

// Distinct-eigenvalue profile of a verification operator, sorted strictly
// descending. entries[0] is the target eigenvalue, stored as exactly 1 with
// multiplicity 1; every other value lies in [0, 1).
struct Spectrum {
    std::vector<SpectrumEntry> entries;
    std::int64_t dim = 0;

    static Spectrum from_entries(std::vector<SpectrumEntry> entries) {
        if (entries.size() < 2) {
            throw validation_error("spectrum needs the target eigenvalue plus at least one more");
        }
        if (entries.front().value != 1.0 || entries.front().multiplicity != 1) {
            throw validation_error("spectrum must start with eigenvalue 1 of multiplicity 1");
        }
        std::int64_t dim = 0;
        double prev = 2.0;
        for (const auto& e : entries) {
            if (e.multiplicity < 1) {
                throw validation_error("spectrum multiplicities must be positive");
            }
            if (e.value >= prev) {
                throw validation_error("spectrum values must be strictly descending");
            }
            if (&e != &entries.front() && (e.value < 0.0 || e.value >= 1.0)) {
                throw validation_error("non-target eigenvalues must lie in [0, 1)");
            }
            prev = e.value;
            dim += e.multiplicity;
        }
        Spectrum s;
        s.entries = std::move(entries);
        s.dim = dim;
        return s;
    }

    // {1, lambda} profile; the multiplicity of lambda only affects dim.
    static Spectrum homogeneous(double lambda, std::int64_t multiplicity = 1) {
        if (lambda < 0.0 || lambda >= 1.0) {
            throw validation_error("homogeneous eigenvalue must lie in [0, 1)");
        }
        return from_entries({{1.0, 1}, {lambda, multiplicity}});
    }

    // Parses "1:1,0.5:3,0.1:2" (value:multiplicity, descending).
    static Spectrum parse(const std::string& text);

    std::string format() const;

    std::vector<double> values() const {
        std::vector<double> v;
        v.reserve(entries.size());
        for (const auto& e : entries) v.push_back(e.value);
        return v;
    }
};

// The scalars that drive every planning formula.
struct StrategySummary {
    double beta = 0.0;              // second largest eigenvalue
    double nu = 1.0;                // spectral gap, 1 - beta
    double tau = 0.0;               // smallest eigenvalue
    bool homogeneous = false;       // all non-target eigenvalues equal
    std::optional<double> lambda;   // present iff homogeneous (= beta = tau)
};

inline StrategySummary summarize(const Spectrum& s) {
    StrategySummary out;
    out.beta = s.entries[1].value;
    out.nu = 1.0 - out.beta;
    out.tau = s.entries.back().value;
    out.homogeneous = s.entries.size() == 2;
    if (out.homogeneous) out.lambda = out.beta;
    return out;
}

// Mixing in the trivial test with probability p maps every non-target
// eigenvalue x to p + (1-p)x; the target eigenvalue stays 1.
inline StrategySummary hedge(const StrategySummary& s, double p) {
    if (!(p >= 0.0 && p < 1.0)) {
        throw validation_error("hedging probability must lie in [0, 1)");
    }
    StrategySummary out;
    out.beta = p + (1.0 - p) * s.beta;
    out.tau = p + (1.0 - p) * s.tau;
    out.nu = (1.0 - p) * s.nu;
    out.homogeneous = s.homogeneous;
    if (s.lambda) out.lambda = p + (1.0 - p) * *s.lambda;
    return out;
}

inline Spectrum hedge(const Spectrum& s, double p) {
    if (!(p >= 0.0 && p < 1.0)) {
        throw validation_error("hedging probability must lie in [0, 1)");
    }
    std::vector<SpectrumEntry> entries = s.entries;
    for (std::size_t i = 1; i < entries.size(); ++i) {
        entries[i].value = p + (1.0 - p) * entries[i].value;
    }
    return Spectrum::from_entries(std::move(entries));
}

namespace detail {

inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    std::string s(buf, res.ptr);
    // shortest digit string that still round-trips
    for (int prec = 1; prec < 17; ++prec) {
        char short_buf[64];
        const auto r = std::to_chars(short_buf, short_buf + sizeof(short_buf), v,
                                     std::chars_format::general, prec);
        std::string candidate(short_buf, r.ptr);
        double back = 0.0;
        std::from_chars(candidate.data(), candidate.data() + candidate.size(), back);
        if (back == v) return candidate;
    }
    return s;
}

}  // namespace detail

inline Spectrum Spectrum::parse(const std::string& text) {
    std::vector<SpectrumEntry> entries;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        const std::string item = text.substr(pos, comma - pos);
        const std::size_t colon = item.find(':');
        if (colon == std::string::npos) {
            throw validation_error("spectrum entry '" + item + "' is not value:multiplicity");
        }
        SpectrumEntry e;
        try {
            e.value = std::stod(item.substr(0, colon));
            e.multiplicity = std::stoll(item.substr(colon + 1));
        } catch (const std::exception&) {
            throw validation_error("cannot parse spectrum entry '" + item + "'");
        }
        entries.push_back(e);
        pos = comma + 1;
        if (comma == text.size()) break;
    }
    return from_entries(std::move(entries));
}

inline std::string Spectrum::format() const {
    std::string out;
    for (const auto& e : entries) {
        if (!out.empty()) out += ',';
        out += detail::format_double(e.value);
        out += ':';
        out += std::to_string(e.multiplicity);
    }
    return out;
}

}  // namespace qsv

#endif
