// errors.hpp: exception types shared by the library and the CLI
#pragma once

#include <stdexcept>
#include <string>

namespace scsep {

/// Precondition or invariant violated by caller-supplied values.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Physical parameters outside the regime where the effective description
/// holds (sign rules, separation conditions, demixing).
class RegimeError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Series or quadrature failed to reach the requested tolerance.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_(achieved) {}
    double achieved() const noexcept { return achieved_; }

private:
    double achieved_;
};

/// Evaluation point lies exactly on a singular line of D(omega, q).
class SingularLineError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Post-processing could not extract the requested feature (peaks, fronts).
class AnalysisError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Split-step stability bound violated.
class StabilityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace scsep
