#pragma once

#include <optional>

#include "salemforge/isom/autgroup.hpp"
#include "salemforge/exactalg/poly.hpp"

namespace salemforge {

struct IsometryClass {
  IntMatrix representative;
  std::uint64_t class_size = 0;  // size of the conjugacy class in O(L)
};

struct CharpolySearchResult {
  std::vector<IsometryClass> classes;
  Int group_order;
  bool complete = false;  // false when the group exceeded max_group_order
};

// Conjugacy classes of O(L) (L definite) whose characteristic polynomial is p.
// Enumerates the group when |O(L)| <= max_group_order.
CharpolySearchResult isometries_with_charpoly(const Lattice& l, const IntPoly& p, Budget& budget,
                                              std::uint64_t max_group_order = 50000000);

// Same, over an already computed group.
CharpolySearchResult isometries_with_charpoly(const AutomorphismGroup& g, const IntPoly& p, Budget& budget,
                                              std::uint64_t max_group_order = 50000000);

}  // namespace salemforge
