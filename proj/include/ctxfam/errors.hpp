#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ctxfam {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition of an operation was violated by the caller
/// (kind mismatch, zero fill, malformed context set, ...).
class ContractError : public Error {
 public:
  using Error::Error;
};

/// A variable set is not contained in the domain it is applied to.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A dependency was evaluated over variables that do not form a context.
class ContextError : public Error {
 public:
  using Error::Error;
};

/// The operation is not defined for this input class
/// (e.g. a precondition of the algorithm does not hold).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Text input could not be parsed. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace ctxfam
