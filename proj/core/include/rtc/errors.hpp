#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace rtc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input. Line and column are 1-based; offset is a byte index.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t offset, std::size_t line, std::size_t column);
  explicit ParseError(const std::string& message);

  std::size_t offset() const { return offset_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t offset_ = 0;
  std::size_t line_ = 0;
  std::size_t column_ = 0;
};

/// A map body refers to a variable outside the declared domain.
class UnboundVariable : public ParseError {
 public:
  using ParseError::ParseError;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A point, vector or map argument lies outside the region where the operation is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A loaded or constructed value fails one of its type invariants.
class InvariantViolation : public Error {
 public:
  InvariantViolation(std::string invariant, const std::string& detail);
  const std::string& invariant() const { return invariant_; }
  const std::string& detail() const { return detail_; }

 private:
  std::string invariant_;
  std::string detail_;
};

/// A map offered as linear in its second argument is not.
class NotLinear : public Error {
 public:
  NotLinear(const std::string& message, std::vector<double> witness);
  const std::vector<double>& witness() const { return witness_; }

 private:
  std::vector<double> witness_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace rtc
