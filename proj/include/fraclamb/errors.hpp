#pragma once

#include <stdexcept>
#include <string>

namespace fraclamb {

// Base of every error raised by the library. The CLI maps Error subclasses
// to exit code 3 (numerical) except ParseError, which maps to 2.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

// A derivative order was requested that the function cannot supply.
class UnsupportedOrderError : public Error {
public:
    using Error::Error;
};

// An improper integral needs decay metadata (or an explicit cutoff) that is missing.
class NoDecayError : public Error {
public:
    using Error::Error;
};

class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double last_estimate, double last_error)
        : Error(what), last_estimate_(last_estimate), last_error_(last_error) {}

    double last_estimate() const noexcept { return last_estimate_; }
    double last_error() const noexcept { return last_error_; }

private:
    double last_estimate_;
    double last_error_;
};

class DimensionCapError : public Error {
public:
    using Error::Error;
};

class NotPositiveDefiniteError : public Error {
public:
    using Error::Error;
};

// Malformed user input (selectors, JSON documents, CSV files).
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace fraclamb
