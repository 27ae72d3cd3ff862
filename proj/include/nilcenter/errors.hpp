#pragma once

#include <stdexcept>
#include <string>

namespace nilcenter {

/// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed textual input. Carries a 1-based line/column.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, int line, int column)
        : Error("parse error at " + std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
          line_(line), column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

/// A mathematical precondition does not hold (wrong normal form, n = 1, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// The requested truncation order is too low to decide anything.
class InconclusiveError : public DomainError {
public:
    using DomainError::DomainError;
};

/// The operation needs numeric coefficients but free parameters remain.
class SymbolicError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Numerical integration could not meet its tolerance budget.
class NumericError : public DomainError {
public:
    using DomainError::DomainError;
};

} // namespace nilcenter
