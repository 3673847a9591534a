#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qemit {

// Physically invalid value (negative rate, non-positive lifetime, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Interface misuse: unknown unit tag, malformed config/CSV, bad grids.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Numerical failure: non-finite propagation, quadrature non-convergence.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A requested normalization has no meaning (zero background, zero-width
// collection window, vanishing reference contrast).
class DegenerateError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// Singular normal matrix in a least-squares problem. Carries the names of
// the parameters the data cannot constrain.
class RankDeficiencyError : public NumericalError {
public:
    RankDeficiencyError(const std::string& what, std::vector<std::string> params)
        : NumericalError(what), degenerate_params(std::move(params)) {}

    std::vector<std::string> degenerate_params;
};

}  // namespace qemit
