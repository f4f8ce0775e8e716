#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "salemforge/isom/genus.hpp"
#include "salemforge/lattice/glue.hpp"
#include "salemforge/lattice/sublattice.hpp"
#include "salemforge/twistglue/gluing.hpp"

namespace salemforge {

// G(L)_p = G(L1)_p + G(L2)_p for an f-stable primitive L1 with complement L2, when p does not divide
// res(chi_{f|L1}, chi_{f|L2}). The map is x1 + x2 -> class of x1 + x2 in G(L).
struct SylowDecomposition {
  std::int64_t p = 2;
  Int resultant;
  AbelianInvariants g, g1, g2;  // p-parts
  bool well_defined = false;    // images of G(L1)_p and G(L2)_p lie in L^*
  bool bijective = false;
  bool form_preserved = false;  // q (or b for odd lattices) and orthogonality of the two parts
  bool equivariant = false;
  bool holds() const { return well_defined && bijective && form_preserved && equivariant; }
};

// Throws PreconditionError when p divides the resultant or L1 is not primitive and f-stable.
SylowDecomposition sylow_glue_decomposition(const Lattice& l, const IntMatrix& l1_basis, const IntMatrix& f,
                                            std::int64_t p);

struct CoprimeGlueReport {
  bool applicable = false;  // orders finite and coprime
  std::uint64_t n1 = 0, n2 = 0;
  bool identity_on_h1 = false, identity_on_h2 = false;
  std::int64_t p = 0;                    // prime of chi_{f1} when it is a prime-power cyclotomic power
  std::optional<bool> p_elementary;      // chi_{f1} = Phi_{p^m}^k
  std::optional<bool> order_one_or_p;    // chi_{f1} = Phi_n, n in {5, 7, 9}
  std::uint64_t h_order = 1;
  std::string note;
  bool holds() const {
    return applicable && identity_on_h1 && identity_on_h2 && p_elementary.value_or(true) &&
           order_one_or_p.value_or(true);
  }
};

CoprimeGlueReport coprime_order_glue_predicates(const Lattice& l1, const IntMatrix& f1, const Lattice& l2,
                                                const IntMatrix& f2, const GluingMap& phi);

// Glue shapes G(L1) = F_2^k + F_p, G(L2) = F_2^(10-k) + F_p for chi_{f1} = Phi_n1 inside U + E10(2),
// and the root obligation on L2 when k = rank L1 and sig L1 = (2, rank - 2).
struct Theorem46Shape {
  unsigned n1 = 0;
  std::int64_t p = 0;
  int k = -1;
  bool g1_ok = false;
  bool g2_ok = false;
  bool obligation = false;     // L2 must have roots
  bool l2_has_roots = false;   // decided by enumeration when the obligation applies
  std::size_t l2_roots = 0;
  bool shape_ok() const { return g1_ok && g2_ok; }
};

// Throws PreconditionError when n1 is not 5, 7 or 9, or the ranks do not add up to 12.
Theorem46Shape theorem46_shape(const Lattice& l1, const Lattice& l2, unsigned n1);

// True when every even definite lattice of this rank and |det| has a vector of norm 2:
// gamma_n^n |det| < 4^n (known Hermite constants, n <= 8).
bool hermite_forces_roots(std::size_t rank, const Int& det);

// Even negative definite rank-8 lattice with G = F_2^6 + F_5, b(x, x) = 0 on the 2-part and 5-part
// isomorphic to minus that of L0(2), L0 the principal Phi_5-lattice. Found as an index-4 sublattice of
// A4 + D4 (first hit in a fixed enumeration order).
Lattice theorem46_genus_seed();

// Invariant test used for the seed: even, sig (0,8), G as above.
bool has_theorem46_invariants(const Lattice& l);

}  // namespace salemforge
