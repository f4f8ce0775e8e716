#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "salemforge/lattice/lattice.hpp"

namespace salemforge {

using GroupElement = std::vector<std::int64_t>;

// Finite abelian group Z/d_1 + ... + Z/d_k with d_i > 1 (not necessarily a divisor chain).
class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() = default;
  explicit FiniteAbelianGroup(std::vector<std::int64_t> orders);

  std::size_t num_generators() const { return orders_.size(); }
  const std::vector<std::int64_t>& orders() const { return orders_; }
  std::uint64_t size() const { return size_; }
  std::int64_t exponent() const { return exponent_; }

  GroupElement zero() const { return GroupElement(orders_.size(), 0); }
  GroupElement unit(std::size_t i) const;
  GroupElement add(const GroupElement& a, const GroupElement& b) const;
  GroupElement neg(const GroupElement& a) const;
  GroupElement scale(const GroupElement& a, std::int64_t m) const;
  GroupElement reduce(GroupElement a) const;
  bool is_zero(const GroupElement& a) const;
  std::int64_t element_order(const GroupElement& a) const;

  // Mixed-radix index in [0, size).
  std::uint64_t index(const GroupElement& a) const;
  GroupElement element(std::uint64_t idx) const;

 private:
  std::vector<std::int64_t> orders_;
  std::uint64_t size_ = 1;
  std::int64_t exponent_ = 1;
};

// Sorted prime-power cyclic orders, e.g. F_2^2 + Z/4 -> {2, 2, 4}.
using AbelianInvariants = std::vector<std::int64_t>;
AbelianInvariants primary_invariants(const std::vector<std::int64_t>& cyclic_orders);
std::string invariants_string(const AbelianInvariants& inv);

// Discriminant group L^* / L with b (mod 1) and, for even L, q (mod 2).
class GlueGroup {
 public:
  explicit GlueGroup(const Lattice& l);

  const Lattice& lattice() const { return lattice_; }
  const FiniteAbelianGroup& group() const { return group_; }
  std::size_t num_generators() const { return group_.num_generators(); }
  Int order(std::size_t i) const { return Int(static_cast<long>(group_.orders()[i])); }
  std::uint64_t size() const { return group_.size(); }
  AbelianInvariants invariants() const { return primary_invariants(group_.orders()); }
  bool even() const { return even_; }

  GroupElement unit(std::size_t i) const { return group_.unit(i); }
  // Generator i as a vector of L^* in lattice coordinates.
  const RatVector& generator(std::size_t i) const { return gens_[i]; }
  RatVector lift(const GroupElement& e) const;
  // Class of x in L^*; throws if x is not in L^*.
  GroupElement element_of(const RatVector& x) const;

  Rat b(const GroupElement& x, const GroupElement& y) const;  // in [0, 1)
  Rat q(const GroupElement& x) const;                         // in [0, 2); needs an even lattice

  // Integer versions over the common denominator den(): b in [0, den), q in [0, 2 den).
  std::int64_t den() const { return den_; }
  std::int64_t b_num(const GroupElement& x, const GroupElement& y) const;
  std::int64_t q_num(const GroupElement& x) const;

  // Matrix of the induced action of an isometry (columns are images of generators).
  IntMatrix action_matrix(const IntMatrix& isometry) const;
  GroupElement apply(const IntMatrix& action, const GroupElement& x) const;

  // Elements of p-power order.
  std::vector<GroupElement> sylow_generators(std::int64_t p) const;

 private:
  Lattice lattice_;
  FiniteAbelianGroup group_;
  std::vector<RatVector> gens_;
  IntMatrix coord_map_;        // rows of U for the nontrivial factors; x -> U G x
  std::vector<std::size_t> pos_;
  std::int64_t den_ = 1;
  std::vector<std::vector<std::int64_t>> bmat_;  // b(g_i, g_j) * den mod den
  std::vector<std::int64_t> qdiag_;              // q(g_i) * den mod 2 den
  bool even_ = false;
};

// Every element of the subgroup generated by gens (BFS closure).
std::vector<GroupElement> subgroup_elements(const FiniteAbelianGroup& g, const std::vector<GroupElement>& gens);
AbelianInvariants subgroup_invariants(const FiniteAbelianGroup& g, const std::vector<GroupElement>& elements);

// Gauss sum |G|^{-1/2} sum exp(pi i q(x)) as (re, im); for even lattices equals exp(2 pi i sig / 8).
std::pair<double, double> gauss_sum(const GlueGroup& g, const std::vector<GroupElement>& elements);

// 2-elementary even discriminant form: delta = 0 iff q(x) is integral for all x.
bool delta_is_zero(const GlueGroup& g);

}  // namespace salemforge
