#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "salemforge/exactalg/poly.hpp"
#include "salemforge/lattice/lattice.hpp"
#include "salemforge/lattice/sublattice.hpp"

namespace salemforge {

// Matrices act on column coordinate vectors; f is an isometry of L iff f^T G f = G.
bool is_isometry(const Lattice& l, const IntMatrix& f);
void require_isometry(const Lattice& l, const IntMatrix& f);

// Smallest k >= 1 with f^k = I, if k <= max_order.
std::optional<std::uint64_t> matrix_order(const IntMatrix& f, std::uint64_t max_order = 100000);

// Ker c(f), saturated.
Sublattice kernel_sublattice(const Lattice& l, const IntMatrix& f, const IntPoly& c);

// Order of the induced action on G(L) (1 for unimodular L).
std::uint64_t glue_action_order(const Lattice& l, const IntMatrix& f);

// Minimal polynomial over Q by Krylov dependence on the full space.
IntPoly minimal_polynomial(const IntMatrix& f);

// Multiplication-by-x matrix of a monic polynomial on the basis 1, x, ..., x^(d-1).
IntMatrix companion_matrix(const IntPoly& p);

}  // namespace salemforge
