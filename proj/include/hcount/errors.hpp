#pragma once

#include <stdexcept>
#include <string>

namespace hcount {

// Raised when a requested table, segment or enumeration exceeds its budget.
class BudgetError : public std::runtime_error {
 public:
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a caller violates an operation's precondition.
class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace hcount
