#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "salemforge/isom/smallmat.hpp"
#include "salemforge/lattice/lattice.hpp"

namespace salemforge {

// Automorphism group of a definite lattice via a base of short vectors and a stabilizer chain.
class AutomorphismGroup {
 public:
  std::size_t dimension() const { return n_; }
  const std::vector<SmallMatrix>& generators() const { return gens_; }
  const std::vector<std::size_t>& orbit_lengths() const { return orbit_len_; }
  Int order() const;

  // Visits every element (depth-first over the transversals); stops early if visit returns false.
  void for_each_element(const std::function<bool(const SmallMatrix&)>& visit, Budget& budget) const;

 private:
  friend AutomorphismGroup automorphism_group(const Lattice& l, Budget& budget);
  std::size_t n_ = 0;
  std::vector<SmallMatrix> gens_;
  std::vector<std::size_t> orbit_len_;
  std::vector<std::vector<SmallMatrix>> transversals_;  // per level, G_i / G_{i+1}
};

AutomorphismGroup automorphism_group(const Lattice& l, Budget& budget);
AutomorphismGroup automorphism_group(const Lattice& l);

// Isometry from -> to of definite lattices: M with M^T G_to M = G_from.
std::optional<IntMatrix> find_isometry(const Lattice& from, const Lattice& to, Budget& budget);

// Same, for any signature, searching images with coordinates in [-box, box].
std::optional<IntMatrix> find_isometry_box(const Lattice& from, const Lattice& to, int box, Budget& budget);

enum class Tri { No, Yes, Unknown };

// Definite lattices are decided exactly; indefinite ones by invariants and a bounded search.
Tri isometric(const Lattice& a, const Lattice& b, Budget& budget, int box = 2);

}  // namespace salemforge
