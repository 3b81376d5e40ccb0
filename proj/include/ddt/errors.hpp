#pragma once

#include <stdexcept>
#include <string>

namespace ddt {

/// Malformed or inconsistent input (bad file, mass mismatch, violated
/// precondition). Maps to CLI exit status 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An exponential oracle was asked to enumerate beyond its configured bound.
class BoundsExceeded : public InputError {
 public:
  using InputError::InputError;
};

/// A branch-and-bound node budget ran out inside a helper that has no
/// status channel of its own.
class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Status {
  kOk,
  kInfeasible,
  kBudgetExhausted,
};

const char* to_string(Status status);

}  // namespace ddt
