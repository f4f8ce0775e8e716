#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "salemforge/exactalg/poly.hpp"
#include "salemforge/twistglue/principal.hpp"

namespace salemforge {

// Units of Z[y]/(R) (R monic, totally real) independent modulo squares.
// Non-squareness is certified by quadratic characters a -> (a(r) / p) at simple roots r of R mod p.
struct UnitSquareClasses {
  IntPoly trace_poly;
  std::vector<IntPoly> basis;                                // includes -1
  std::vector<std::pair<std::uint64_t, std::int64_t>> characters;  // (p, r) used in the certificate
  bool complete = false;  // basis size equals the number of real places (|U/U^2| = 2^deg R)
  // Smallest unit found in the search box for each character vector.
  std::map<std::vector<int>, IntPoly> small;
};

// Searches coefficient vectors in [-bound, bound]^deg R for units.
UnitSquareClasses unit_square_classes(const IntPoly& r, int bound = 2);

// A unit in the class of the product of the basis elements selected by mask: the smallest one
// seen in the search when available, else the product reduced mod R.
IntPoly unit_class(const UnitSquareClasses& u, std::uint64_t mask);

// Reduction of a(y) mod R.
IntPoly reduce_mod(const IntPoly& a, const IntPoly& r);

// Quadratic character of a at the root r of R mod p: +1, -1 (0 if a(r) = 0 mod p).
int quadratic_character(const IntPoly& a, std::uint64_t p, std::int64_t r);

// Stable short name for a polynomial, used for data file names.
std::string polynomial_hash(const IntPoly& p);

}  // namespace salemforge
