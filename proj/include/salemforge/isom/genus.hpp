#pragma once

#include <optional>

#include "salemforge/isom/autgroup.hpp"
#include "salemforge/lattice/enumerate.hpp"

namespace salemforge {

// p-neighbor of an even definite lattice for an odd prime p not dividing det L.
// v must satisfy (v, v) = 0 mod p and v not in pL; it is adjusted by pL so that (v, v) = 0 mod p^2.
// The result is L_v + Z v/p with L_v = {x : (x, v) = 0 mod p}, in an LLL-reduced basis.
Lattice kneser_neighbor(const Lattice& l, std::int64_t p, const IntVector& v);

struct GenusResult {
  std::vector<Lattice> classes;
  std::vector<Int> aut_orders;
  bool complete = false;  // every isotropic line of every class was explored
  std::uint64_t neighbors_built = 0;
};

GenusResult genus_explore(const Lattice& seed, std::int64_t p, std::size_t max_classes, Budget& budget);

// Invariant used to bucket classes before isometry testing.
std::vector<std::int64_t> lattice_fingerprint(const Lattice& l, Budget& budget);

}  // namespace salemforge
