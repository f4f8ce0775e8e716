#include "salemforge/core/errors.hpp"

#include <cstdlib>

namespace salemforge {

Budget Budget::from_env(std::uint64_t fallback) {
  const char* v = std::getenv("SALEMFORGE_BUDGET_NODES");
  if (v == nullptr || *v == '\0') return Budget(fallback);
  char* end = nullptr;
  unsigned long long n = std::strtoull(v, &end, 10);
  if (end == v || *end != '\0') throw PreconditionError("SALEMFORGE_BUDGET_NODES is not a non-negative integer");
  return Budget(n);
}

void Budget::exhausted() const {
  throw BudgetExhausted("node budget exhausted after " + std::to_string(used_) + " nodes (limit " +
                        std::to_string(max_nodes_) + ")");
}

Budget& unlimited_budget() {
  thread_local Budget b;
  b = Budget();
  return b;
}

}  // namespace salemforge
