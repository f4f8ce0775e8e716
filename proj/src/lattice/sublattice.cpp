#include "salemforge/lattice/sublattice.hpp"

namespace salemforge {

Sublattice::Sublattice(const Lattice& host, IntMatrix basis) : host_(host), basis_(std::move(basis)) {
  if (basis_.rows() > 0 && basis_.cols() != host_.rank()) throw PreconditionError("sublattice basis has wrong width");
  if (basis_.rows() > 0 && rank_of() != basis_.rows()) throw PreconditionError("sublattice basis is not independent");
}

std::size_t Sublattice::rank_of() const { return salemforge::rank(basis_); }

bool Sublattice::is_primitive() const {
  for (const Int& d : elementary_divisors(basis_))
    if (d != 1) return false;
  return true;
}

Sublattice Sublattice::saturation() const { return Sublattice(host_, saturate(basis_)); }

Sublattice Sublattice::orthogonal_complement() const {
  if (basis_.rows() == 0) return Sublattice(host_, IntMatrix::identity(host_.rank()));
  return Sublattice(host_, integer_kernel(basis_ * host_.gram()));
}

IntVector Sublattice::coordinates(const IntVector& v) const {
  auto c = express_in_basis(basis_, v);
  if (!c) throw PreconditionError("vector is not in the sublattice");
  return *c;
}

bool Sublattice::contains(const IntVector& v) const { return express_in_basis(basis_, v).has_value(); }

IntMatrix Sublattice::restrict_isometry(const IntMatrix& f) const {
  std::size_t k = basis_.rows();
  IntMatrix r(k, k);
  for (std::size_t j = 0; j < k; ++j) {
    IntVector img = f * basis_.row(j);
    IntVector c = coordinates(img);
    for (std::size_t i = 0; i < k; ++i) r(i, j) = c[i];
  }
  return r;
}

bool Sublattice::is_invariant(const IntMatrix& f) const {
  for (std::size_t j = 0; j < basis_.rows(); ++j)
    if (!contains(f * basis_.row(j))) return false;
  return true;
}

}  // namespace salemforge
