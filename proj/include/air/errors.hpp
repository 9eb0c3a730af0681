#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace air {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FieldMismatchError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

/// Field rejected at construction (non-prime modulus, characteristic 2 or 3).
class InvalidFieldError : public Error {
 public:
  using Error::Error;
};

/// Operation needs a finite field (or Q) and was given the other kind.
class UnsupportedFieldError : public Error {
 public:
  using Error::Error;
};

class BudgetExceededError : public Error {
 public:
  BudgetExceededError(std::size_t required, std::size_t budget)
      : Error("enumeration needs " + std::to_string(required) + " elements, budget is " +
              std::to_string(budget)),
        required_(required),
        budget_(budget) {}

  std::size_t required() const noexcept { return required_; }
  std::size_t budget() const noexcept { return budget_; }

 private:
  std::size_t required_;
  std::size_t budget_;
};

class NonAssociativeError : public Error {
 public:
  using Error::Error;
};

class UnverifiedDecompositionError : public Error {
 public:
  using Error::Error;
};

class NotNilpotentError : public Error {
 public:
  using Error::Error;
};

/// DSL error carrying a 1-based source location.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column),
        message_(message) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

}  // namespace air
