#pragma once

#include <stdexcept>
#include <string>

namespace ipc {

/// Subsystem dimensions or indices that do not fit the operand.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An operand violates a type invariant (Hermiticity, trace, positivity, norm, parameter domain).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A fidelity witness whose Schmidt rank is below the requested level.
class InvalidWitness : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace ipc
