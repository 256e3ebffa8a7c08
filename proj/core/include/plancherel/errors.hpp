#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace plancherel {

// Caller passed arguments outside an operation's contract.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Argument lies outside the mathematical domain (z = 0, z0 >= 0, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Point is not in the region an operation requires (e.g. no complex root of R).
class RegionError : public DomainError {
public:
    using DomainError::DomainError;
};

// Enumeration window fails the boundary-mass test.
class WindowTooSmall : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Quadrature or root polishing did not reach the requested tolerance.
class NumericalFailure : public std::runtime_error {
public:
    explicit NumericalFailure(const std::string& what,
                              double last_estimate = std::numeric_limits<double>::quiet_NaN())
        : std::runtime_error(what), last_(last_estimate) {}
    double last_estimate() const { return last_; }

private:
    double last_;
};

} // namespace plancherel
