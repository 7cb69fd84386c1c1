#ifndef QSV_ERRORS_HPP
#define QSV_ERRORS_HPP

#include <stdexcept>

namespace qsv {

// Malformed or out-of-domain input: bad flag values, broken invariants,
// mismatched dimensions. The CLI maps this to exit code 2.
struct validation_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Structurally valid input that cannot be served: degenerate top eigenvalue,
// delta above the best achievable pass probability, combinatorial guards,
// singular operator where a positive smallest eigenvalue is required.
// The CLI maps this to exit code 3.
struct infeasible_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace qsv

#endif
