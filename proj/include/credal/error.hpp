#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace credal {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two objects that must live on the same outcome space do not.
class SpaceMismatch : public Error {
public:
    using Error::Error;
};

class EmptyEvent : public Error {
public:
    using Error::Error;
};

/// Conditioning on an event of (lower) probability zero.
class ZeroConditioningEvent : public Error {
public:
    using Error::Error;
};

/// A label, variable name or state name that does not exist.
class UnknownLabel : public Error {
public:
    using Error::Error;
};

/// Malformed constructor arguments (non-normalized masses, empty sets, ...).
class InvalidModel : public Error {
public:
    using Error::Error;
};

/// Syntax error in a JSON document; carries a 1-based line/column.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Structurally invalid network or scenario (cycle, dimension mismatch, bad row, ...).
class NetworkError : public Error {
public:
    using Error::Error;
};

/// A query that is malformed for the given network (class in evidence, ...).
class QueryError : public Error {
public:
    using Error::Error;
};

/// The network assigns zero probability somewhere the conservative rules need it positive.
class PositivityViolation : public Error {
public:
    using Error::Error;
};

/// A dynamic-programming factor kept a variable it should have eliminated.
class InternalScopeError : public Error {
public:
    using Error::Error;
};

}  // namespace credal
