#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace patmine {

/// Malformed or inconsistent input data (hierarchy, sequences, unknown items).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Syntax or validation error in a pattern expression.
class PatternError : public std::runtime_error {
 public:
  PatternError(const std::string& message, std::size_t offset)
      : std::runtime_error(message + " at offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// An internal invariant does not hold. Indicates a bug, not bad input.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Thrown by the miners when their stop token is triggered.
class MiningCancelled : public std::runtime_error {
 public:
  MiningCancelled() : std::runtime_error("mining cancelled") {}
};

}  // namespace patmine
