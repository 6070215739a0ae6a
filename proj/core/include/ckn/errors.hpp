#pragma once

#include <stdexcept>
#include <string>

namespace ckn {

/// Base class for every numerical failure the library reports.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

/// An integral kept growing as the integration window was widened.
class DivergenceError : public NumericError {
public:
    explicit DivergenceError(const std::string& what, std::string component = {})
        : NumericError(what), component_(std::move(component)) {}
    /// Which of P/G/M/Q diverged, when raised from a weighted-integral assembly.
    const std::string& component() const noexcept { return component_; }

private:
    std::string component_;
};

/// The integrand returned NaN/Inf inside the integration window.
class NonFiniteError : public NumericError {
public:
    using NumericError::NumericError;
};

/// No interior peak found when scanning for an integration window.
class PeakNotFoundError : public NumericError {
public:
    using NumericError::NumericError;
};

/// A profile/parameter combination violates its validity conditions.
class InvalidSpecError : public std::invalid_argument {
public:
    explicit InvalidSpecError(const std::string& what) : std::invalid_argument(what) {}
};

/// A profile without compact support was passed to an identity that needs one.
class UnsupportedProfileError : public std::invalid_argument {
public:
    explicit UnsupportedProfileError(const std::string& what) : std::invalid_argument(what) {}
};

/// A Rayleigh quotient was requested for a profile with zero denominator.
class ZeroDenominatorError : public NumericError {
public:
    using NumericError::NumericError;
};

/// Eigensolver failure (factorization breakdown or iteration cap).
class SolverError : public NumericError {
public:
    using NumericError::NumericError;
};

} // namespace ckn
