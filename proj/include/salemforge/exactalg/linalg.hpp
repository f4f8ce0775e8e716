#pragma once

#include <optional>
#include <vector>

#include "salemforge/exactalg/matrix.hpp"

namespace salemforge {

// Fraction-free (Bareiss) determinant.
Int determinant(const IntMatrix& m);
Rat determinant(const RatMatrix& m);

std::size_t rank(const RatMatrix& m);
inline std::size_t rank(const IntMatrix& m) { return rank(to_rat(m)); }

// Throws PreconditionError when singular.
RatMatrix inverse(const RatMatrix& m);
inline RatMatrix inverse(const IntMatrix& m) { return inverse(to_rat(m)); }

// Some solution of A x = b, or nullopt.
std::optional<RatVector> solve(const RatMatrix& a, const RatVector& b);

// Basis of {x in Q^n : A x = 0}, as rows.
RatMatrix rational_kernel(const RatMatrix& a);

struct SmithForm {
  IntMatrix S;  // diagonal, d_1 | d_2 | ..., non-negative
  IntMatrix U;  // unimodular, rows x rows
  IntMatrix V;  // unimodular, cols x cols
  // U * M * V == S
};

SmithForm smith_normal_form(const IntMatrix& m);
// Invariant factors only (diagonal of S, including zeros for rank defect).
IntVector elementary_divisors(const IntMatrix& m);

// Row-style Hermite normal form of the row lattice of m; zero rows dropped.
IntMatrix hermite_normal_form(const IntMatrix& m);
// Same for the lattice spanned by the rows of m together with d Z^n (d > 0).
// Entries stay below d, so this is the safe choice for full-rank lattices.
IntMatrix hermite_normal_form_mod(const IntMatrix& m, const Int& d);

// Basis (rows) of the saturated lattice {x in Z^n : A x = 0}.
IntMatrix integer_kernel(const IntMatrix& a);

// Rows spanning (row space of B tensor Q) intersected with Z^n.
IntMatrix saturate(const IntMatrix& b);

// Expresses target in the (independent) row basis B; nullopt when not in the Z-span.
std::optional<IntVector> express_in_basis(const IntMatrix& b, const IntVector& target);

}  // namespace salemforge
