#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace radsob {

/// Violated precondition on user-supplied parameters (bad dimension, order,
/// exponent, method/p combination, malformed corpus, ...).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An enumeration would exceed the configured resource budget.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::uint64_t required, std::uint64_t budget)
      : std::runtime_error("enumeration requires " + std::to_string(required) +
                           " d-indices, budget is " + std::to_string(budget)),
        required_(required),
        budget_(budget) {}

  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::uint64_t required_;
  std::uint64_t budget_;
};

}  // namespace radsob
