#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace bogospec {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of an operation
/// (zero momentum, negative cutoff, eps out of range, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A tabulated quantity was queried outside its table.
class OutOfRangeError : public Error {
public:
    using Error::Error;
};

/// A momentum sector was requested outside the enumerated window.
class OutOfWindowError : public Error {
public:
    using Error::Error;
};

/// The omitted tail of a lattice sum or integral cannot be bounded.
class TailBoundError : public Error {
public:
    using Error::Error;
};

/// A basis or matrix would exceed the configured size cap.
class SizeError : public Error {
public:
    using Error::Error;
};

/// An internal invariant failed; usually a truncation artifact.
class InvariantError : public Error {
public:
    using Error::Error;
};

/// Malformed configuration or command-line input.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Iterative eigensolver did not reach the requested residual.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, std::vector<double> best_residuals)
        : Error(what), best_residuals_(std::move(best_residuals)) {}

    const std::vector<double>& best_residuals() const noexcept { return best_residuals_; }

private:
    std::vector<double> best_residuals_;
};

} // namespace bogospec
