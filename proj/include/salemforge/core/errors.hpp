#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace salemforge {

// Input violates a documented precondition. Never used for verdicts.
class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

class BudgetExhausted : public std::runtime_error {
 public:
  explicit BudgetExhausted(const std::string& what) : std::runtime_error(what) {}
};

class OverflowError : public std::overflow_error {
 public:
  explicit OverflowError(const std::string& what) : std::overflow_error(what) {}
};

// Node counter shared by the enumerative searches. A limit of 0 means unlimited.
class Budget {
 public:
  Budget() = default;
  explicit Budget(std::uint64_t max_nodes) : max_nodes_(max_nodes) {}

  // Reads SALEMFORGE_BUDGET_NODES; falls back to `fallback` when unset.
  static Budget from_env(std::uint64_t fallback = 0);

  void consume(std::uint64_t n = 1) {
    used_ += n;
    if (max_nodes_ != 0 && used_ > max_nodes_) exhausted();
  }
  bool would_exceed(std::uint64_t n) const { return max_nodes_ != 0 && used_ + n > max_nodes_; }
  std::uint64_t used() const { return used_; }
  std::uint64_t limit() const { return max_nodes_; }
  void set_limit(std::uint64_t n) { max_nodes_ = n; }

 private:
  [[noreturn]] void exhausted() const;

  std::uint64_t max_nodes_ = 0;
  std::uint64_t used_ = 0;
};

// Convenience: a default unlimited budget for callers that do not care.
Budget& unlimited_budget();

}  // namespace salemforge
