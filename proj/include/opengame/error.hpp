#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace opengame {

// A node or enumeration budget was exceeded.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, std::uint64_t budget)
      : std::runtime_error(what + " (budget " + std::to_string(budget) + ")"),
        budget_(budget) {}
  std::uint64_t budget() const { return budget_; }

 private:
  std::uint64_t budget_;
};

// Two independent computations that must agree did not.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Node/enumeration budget from OPENGAME_BUDGET, or `fallback` when unset.
std::uint64_t budget_from_env(std::uint64_t fallback);

inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 24;

}  // namespace opengame
