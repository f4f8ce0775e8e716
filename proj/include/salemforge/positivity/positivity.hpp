#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "salemforge/core/errors.hpp"
#include "salemforge/exactalg/matrix.hpp"
#include "salemforge/exactalg/poly.hpp"
#include "salemforge/exactalg/realalg.hpp"
#include "salemforge/lattice/lattice.hpp"

namespace salemforge {

// chi_f = (x - 1)^k C0(x) S(x) with S the Salem factor.
struct SalemSplit {
  IntPoly salem;
  IntPoly c0;
  int k = 0;
};
// Throws PreconditionError if chi_f has no Salem factor (spectral radius 1).
SalemSplit salem_split(const IntMatrix& f);

// Roots of the (negative definite) kernel of C0(f), in L coordinates, one per sign pair.
std::vector<IntVector> cyclic_roots(const Lattice& l, const IntMatrix& f, Budget& budget);
// Smallest i >= 1 with r + f r + ... + f^i r = 0, or 0 if none within the order bound.
int cyclic_period(const IntMatrix& f, const IntVector& r, int max_period = 1000);

// Eigenvectors f v = tau v, f w = tau^-1 w over Q(tau), normalized so (v, w) > 0.
struct EigenPair {
  RealNumberField field;
  std::vector<RatPoly> v, w;
  std::vector<RatPoly> gv, gw;  // G v and G w, so (r, v) = r . gv
  RatPoly vw;                   // (v, w)
};
EigenPair salem_eigenpair(const Lattice& l, const IntMatrix& f);

// Exact sign of (r, v) (r, w).
int crossing_sign(EigenPair& e, const IntVector& r);

// h = floor(n (v + w)) + z with (h, h) > 0, n doubling from 2^start_log2, z in {-2..2}^n seeded.
// Throws PreconditionError if (h, f h) < 0 (f swaps the two cones), BudgetExhausted after max_tries.
IntVector test_vector(const Lattice& l, const IntMatrix& f, const EigenPair& e, std::uint64_t seed = 0x5A1E,
                      int start_log2 = 0, int max_tries = 64);

// A' = {(a, b) : a > 0, b < 0, -2x^2 + 2y^2 + 2aby >= x(a^2 + b^2)}.
std::vector<std::pair<Int, Int>> crossing_bound_set(const Int& x, const Int& y);

struct ObstructionSets {
  std::vector<IntVector> rh;   // roots orthogonal to h
  std::vector<IntVector> sh;   // roots separating h and f(h)
  std::vector<std::pair<Int, Int>> a_prime;
};
ObstructionSets obstruction_sets(const Lattice& l, const IntMatrix& f, const IntVector& h, Budget& budget);

struct PositivityVerdict {
  enum class Status { Positive, NotPositive };
  enum class Witness { None, Cyclic, SignCrossing };
  Status status = Status::Positive;
  Witness witness_kind = Witness::None;
  std::optional<IntVector> witness;
  int period = 0;  // cyclic witnesses
  int step = 0;    // algorithm step that produced the verdict
  IntVector h;
  Int hh, hfh;
  IntPoly salem, c0;
  std::size_t cyclic_count = 0;
  std::vector<IntVector> rh;
  std::vector<std::pair<Int, Int>> a_prime;
  std::size_t sh_count = 0;  // roots of S_h examined before stopping
  bool positive() const { return status == Status::Positive; }
};

PositivityVerdict positivity_check(const Lattice& l, const IntMatrix& f, const std::optional<IntVector>& h,
                                   Budget& budget, std::uint64_t seed = 0x5A1E);

const char* to_string(PositivityVerdict::Status s);
const char* to_string(PositivityVerdict::Witness w);

}  // namespace salemforge
