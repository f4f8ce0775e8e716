#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "salemforge/lattice/lattice.hpp"

namespace salemforge {

using SmallVector = std::vector<std::int64_t>;

struct LllResult {
  IntMatrix gram;       // reduced Gram, T G T^T
  IntMatrix transform;  // rows are the reduced basis in old coordinates
};

// Integral LLL (delta = 3/4) on a positive definite Gram matrix.
LllResult lll_reduce(const IntMatrix& gram);

struct ShortVector {
  SmallVector v;
  std::int64_t norm;
};

// All x != 0 with |(x, x)| <= bound, one per +-pair, for a definite lattice (either sign).
// Norms are reported with the lattice's sign. Counts nodes against the budget.
std::vector<ShortVector> short_vectors(const Lattice& l, std::int64_t bound, Budget& budget);
std::vector<ShortVector> short_vectors(const Lattice& l, std::int64_t bound);

// Vectors of norm exactly -2 of a negative definite lattice, one per +-pair.
std::vector<SmallVector> roots(const Lattice& l, Budget& budget);
std::vector<SmallVector> roots(const Lattice& l);

// Roots r of L with (r, h) = 0, where (h, h) > 0 and h^perp is negative definite.
std::vector<SmallVector> roots_in_hyperplane(const Lattice& l, const IntVector& h, Budget& budget);

// |norm| -> number of vectors (both signs) with that norm, up to bound.
std::map<std::int64_t, std::uint64_t> theta_prefix(const Lattice& l, std::int64_t bound, Budget& budget);

SmallVector to_small(const IntVector& v);
IntVector to_int(const SmallVector& v);

}  // namespace salemforge
