#pragma once

#include <stdexcept>
#include <string>

namespace gonodyn {

/// Input lies outside the operator's domain (e.g. a block frequency sum is zero).
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// A denominator collapsed below the representable floor in floating point.
struct NumericalDegeneracyError : std::runtime_error {
    explicit NumericalDegeneracyError(const std::string& what) : std::runtime_error(what) {}
};

/// A documented precondition was violated (e.g. eigenvalues requested at a non-fixed point).
struct PreconditionError : std::runtime_error {
    explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

/// A series recurrence hit a vanishing leading factor and cannot be continued.
struct ResonanceError : std::runtime_error {
    ResonanceError(const std::string& what, int order) : std::runtime_error(what), order(order) {}
    int order;
};

/// Malformed input file (CSV/JSON), distinct from semantic domain errors.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Bad run configuration (ranges, mutually exclusive options, case mismatch).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gonodyn
