#include "rtc/errors.hpp"

namespace rtc {

ParseError::ParseError(const std::string& message, std::size_t offset, std::size_t line,
                       std::size_t column)
    : Error(message + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
      offset_(offset),
      line_(line),
      column_(column) {}

ParseError::ParseError(const std::string& message) : Error(message) {}

InvariantViolation::InvariantViolation(std::string invariant, const std::string& detail)
    : Error("invariant '" + invariant + "' violated: " + detail), invariant_(std::move(invariant)), detail_(detail) {}

NotLinear::NotLinear(const std::string& message, std::vector<double> witness)
    : Error(message), witness_(std::move(witness)) {}

}  // namespace rtc
