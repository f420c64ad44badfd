#pragma once

#include <stdexcept>
#include <string>

namespace ielc {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when normalization exceeds its step budget. Strong normalization
/// guarantees termination on well-typed terms, so hitting this on a checked
/// deduction signals a kernel bug.
struct StepBudgetExceeded : Error {
  int budget;
  explicit StepBudgetExceeded(int b)
      : Error("step budget exceeded (" + std::to_string(b) + " steps)"),
        budget(b) {}
};

}  // namespace ielc
