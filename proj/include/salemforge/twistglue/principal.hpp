#pragma once

#include <cstdint>
#include <vector>

#include "salemforge/isom/isometry.hpp"

namespace salemforge {

// A lattice with a distinguished isometry.
struct PLattice {
  Lattice lattice;
  IntMatrix f;
};

// (Z[x]/P, multiplication by x) with (g1, g2) = Tr(g1 * conj(g2) / R'(x + 1/x)).
// P must be monic, reciprocal, of even degree, with R(2) R(-2) = +-1 (so the Gram matrix is integral).
PLattice principal_lattice(const IntPoly& p);

// Twist by a(y), y = f + f^-1: (v, w)_a = (a v, w). a must be coprime to the trace polynomial's factors.
PLattice twist(const PLattice& l, const IntPoly& a);

// Primes dividing prod res(S, Phi_k) over phi(k) <= 10 - deg S.
std::vector<std::uint64_t> feasible_primes(const IntPoly& s);

struct SalemFactorReport {
  bool primes_ok = false;
  bool order_ok = false;
  bool annihilator_ok = false;
  std::uint64_t glue_order = 1;
  unsigned d_of_order = 0;
  std::vector<unsigned> annihilator;  // cyclotomic indices of a witness C
  bool passed() const { return primes_ok && order_ok && annihilator_ok; }
};

SalemFactorReport salem_factor_check(const Lattice& l, const IntMatrix& f, const IntPoly& s);

}  // namespace salemforge
