#pragma once

#include <stdexcept>
#include <string>

namespace dkron {

// Thrown when a truncated Laurent series cannot certify the digits a
// computation needs (e.g. deciding a valuation threshold past the known
// prefix). The message names the index that was requested.
class InsufficientPrecisionError : public std::runtime_error {
 public:
  explicit InsufficientPrecisionError(const std::string& what)
      : std::runtime_error(what) {}
};

// Thrown when an exact enumeration or full grid sweep would exceed the
// configured work budget. Callers either raise the budget or switch to a
// sampling mode.
class BudgetExceededError : public std::runtime_error {
 public:
  explicit BudgetExceededError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace dkron
