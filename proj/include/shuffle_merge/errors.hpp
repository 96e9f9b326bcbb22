#pragma once

#include <stdexcept>
#include <string>

namespace shuffle_merge {

// Thrown when a caller breaks an operation's precondition (odd length,
// unsorted input, parameter out of range, ...).
class ContractViolation : public std::invalid_argument {
 public:
  explicit ContractViolation(const std::string& what)
      : std::invalid_argument(what) {}
};

// Bad command-line input or an unusable request (e.g. plotting no rows).
class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

// Thrown when a computed result fails its own postcondition check.
class VerificationError : public std::runtime_error {
 public:
  explicit VerificationError(const std::string& what)
      : std::runtime_error(what) {}
};

inline void require(bool condition, const char* message) {
  if (!condition) throw ContractViolation(message);
}

inline void require(bool condition, const std::string& message) {
  if (!condition) throw ContractViolation(message);
}

}  // namespace shuffle_merge
