#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ordsemi {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Elements of two different backends were combined in one operation.
class BackendMismatch : public Error {
public:
    using Error::Error;
};

/// An operation was called outside its domain (x <= y for an anomalous
/// query, mixed signs, anomalous backend for the rank embedding, ...).
class PreconditionViolation : public Error {
public:
    using Error::Error;
};

/// No witness was found within the search budget. This never means that
/// the witness does not exist.
class BudgetExhausted : public Error {
public:
    using Error::Error;
};

/// No refinement level within the budget separated a divisor from zero.
class ZeroDivision : public Error {
public:
    using Error::Error;
};

/// Malformed backend descriptor (perfect-square radicand, non-positive slope).
class DescriptorError : public Error {
public:
    using Error::Error;
};

/// Syntax error in an element expression or workspace document.
/// Line and column are 1-based.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line), column_(column), message_(message) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    const std::string& message() const noexcept { return message_; }

private:
    std::size_t line_;
    std::size_t column_;
    std::string message_;
};

} // namespace ordsemi
