#ifndef QSV_NUMERIC_HPP
#define QSV_NUMERIC_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "qsv/errors.hpp"

namespace qsv {

namespace detail {

// int64 casts of planning counts; 2^62 leaves headroom for +/-1 corrections.
inline void require_representable(double x) {
    if (!(std::fabs(x) < 4.6e18)) {
        throw infeasible_error("requested count exceeds the representable range");
    }
}

}  // namespace detail

inline constexpr double kE = 2.718281828459045235360287471352662498;
inline constexpr double kInvE = 0.367879441171442321595523770161460867;

// Relative window inside which a ratio sitting just above/below an integer is
// treated as that integer before a ceiling/floor is taken.
inline constexpr double kIntegerSnap = 1e-9;

// Relative slack for boundary comparisons of computed quantities (fidelities,
// acceptance probabilities) against their thresholds.
inline constexpr double kBoundarySlack = 1e-9;

// ceil(x) that forgives floating-point overshoot: a value within the snap
// window above an integer maps to that integer, not the next one.
inline std::int64_t nudged_ceil(double x) {
    detail::require_representable(x);
    const double r = std::nearbyint(x);
    if (x > r && x - r <= kIntegerSnap * std::max(1.0, std::fabs(x))) {
        return static_cast<std::int64_t>(r);
    }
    return static_cast<std::int64_t>(std::ceil(x));
}

// floor(x) with the mirrored snap window below an integer.
inline std::int64_t nudged_floor(double x) {
    detail::require_representable(x);
    const double r = std::nearbyint(x);
    if (x < r && r - x <= kIntegerSnap * std::max(1.0, std::fabs(x))) {
        return static_cast<std::int64_t>(r);
    }
    return static_cast<std::int64_t>(std::floor(x));
}

// a >= b up to slack relative to the operands' magnitude. The slack scales
// with the values themselves so comparisons between tiny probabilities keep
// their meaning.
inline bool fuzzy_geq(double a, double b) {
    return a >= b - kBoundarySlack * std::max(std::fabs(a), std::fabs(b));
}

inline bool fuzzy_leq(double a, double b) {
    return fuzzy_geq(b, a);
}

// base^k evaluated as exp(k ln base): one rounding step regardless of k.
// base = 0 yields 0^0 = 1 and 0 otherwise.
inline double pow_via_log(double base, double k) {
    if (k == 0.0) return 1.0;
    if (base == 0.0) return 0.0;
    return std::exp(k * std::log(base));
}

// x ln(1/x) for x in (0, 1]; the cost kernel of the adversarial bounds.
inline double x_log_inv(double x) {
    return -x * std::log(x);
}

namespace detail {

// Largest integer k in [lo, hi] satisfying a nonincreasing predicate, with
// pred(lo) required to hold. The search is anchored at a closed-form
// candidate and scans a +/-2 window first; the defining inequality, not the
// candidate, decides the answer, and the search widens when the window is
// inconclusive.
template <class Pred>
std::int64_t largest_satisfying(std::int64_t lo, std::int64_t hi, std::int64_t anchor, Pred&& pred) {
    auto bisect = [&pred](std::int64_t a, std::int64_t b) {
        // pred(a) true on entry
        while (a < b) {
            const std::int64_t mid = a + (b - a + 1) / 2;
            if (pred(mid)) {
                a = mid;
            } else {
                b = mid - 1;
            }
        }
        return a;
    };
    const std::int64_t wlo = std::clamp(anchor - 2, lo, hi);
    const std::int64_t whi = std::clamp(anchor + 2, lo, hi);
    for (std::int64_t k = whi; k >= wlo; --k) {
        if (!pred(k)) continue;
        if (k == whi && whi < hi && pred(whi + 1)) {
            return bisect(whi + 1, hi);
        }
        return k;
    }
    if (wlo > lo) {
        return bisect(lo, wlo - 1);
    }
    if (!pred(lo)) {
        throw std::logic_error("largest_satisfying: predicate false at lower bound");
    }
    return lo;
}

}  // namespace detail

}  // namespace qsv

#endif
