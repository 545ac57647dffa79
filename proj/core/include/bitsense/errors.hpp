#pragma once

#include <stdexcept>
#include <string>

namespace bitsense {

/// Operand sizes that do not agree (matrix/vector, pattern/pattern).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An argument outside the mathematical domain of an operation.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// File ingestion / emission failures.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bitsense
