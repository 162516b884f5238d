#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace vixsel {

// Root of every error the library throws. `statement()` is set when the
// error originated inside a multi-statement workload file.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& message);

  const std::optional<std::size_t>& statement() const { return statement_; }
  void set_statement(std::size_t index);

  const char* what() const noexcept override;

 private:
  std::optional<std::size_t> statement_;
  std::string full_message_;
};

// Malformed catalog or candidates file.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Well-formed input that violates a type invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// SQL-subset grammar violation. Line and column are 1-based.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, std::size_t line, std::size_t column);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Table or attribute not present in the catalog.
class UnknownNameError : public Error {
 public:
  using Error::Error;
};

class InvalidBudget : public Error {
 public:
  using Error::Error;
};

class TooManyObjects : public Error {
 public:
  using Error::Error;
};

}  // namespace vixsel
