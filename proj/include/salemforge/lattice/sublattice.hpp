#pragma once

#include "salemforge/lattice/lattice.hpp"

namespace salemforge {

// Sublattice of a host lattice; rows of basis are host coordinates.
class Sublattice {
 public:
  Sublattice(const Lattice& host, IntMatrix basis);

  const Lattice& host() const { return host_; }
  const IntMatrix& basis() const { return basis_; }
  std::size_t rank() const { return basis_.rows(); }
  // The sublattice as a lattice in its own basis.
  Lattice lattice(std::string label = "") const { return sublattice_gram(host_, basis_, std::move(label)); }

  bool is_primitive() const;
  Sublattice saturation() const;
  // Primitive sublattice orthogonal to this one.
  Sublattice orthogonal_complement() const;
  // Coordinates (in this basis) of a host vector lying in the sublattice; throws otherwise.
  IntVector coordinates(const IntVector& host_vector) const;
  bool contains(const IntVector& host_vector) const;
  // Matrix of f restricted to the sublattice (f must preserve it), acting on columns.
  IntMatrix restrict_isometry(const IntMatrix& f) const;
  bool is_invariant(const IntMatrix& f) const;

 private:
  std::size_t rank_of() const;

  Lattice host_;
  IntMatrix basis_;
};

}  // namespace salemforge
