#include "salemforge/twistglue/constraints.hpp"

#include <numeric>

#include "salemforge/exactalg/linalg.hpp"
#include "salemforge/exactalg/salem.hpp"
#include "salemforge/isom/isometry.hpp"
#include "salemforge/lattice/enumerate.hpp"
#include "salemforge/twistglue/principal.hpp"

namespace salemforge {

namespace {

std::uint64_t sylow_size(const GlueGroup& g, std::int64_t p) {
  return subgroup_elements(g.group(), g.sylow_generators(p)).size();
}

AbelianInvariants sylow_invariants(const GlueGroup& g, std::int64_t p) {
  return subgroup_invariants(g.group(), subgroup_elements(g.group(), g.sylow_generators(p)));
}

// x in L1 coordinates -> same vector in L coordinates.
RatVector push(const IntMatrix& basis, const RatVector& x) {
  RatVector y(basis.cols(), Rat(0));
  for (std::size_t i = 0; i < basis.rows(); ++i)
    for (std::size_t j = 0; j < basis.cols(); ++j) y[j] += x[i] * basis(i, j);
  return y;
}

// Counts of each prime-power invariant.
bool is_shape(const AbelianInvariants& inv, int twos, std::int64_t p) {
  AbelianInvariants want(static_cast<std::size_t>(twos), 2);
  want.push_back(p);
  return inv == primary_invariants(want);
}

std::int64_t prime_of(unsigned n) {
  for (std::int64_t q = 2; q <= static_cast<std::int64_t>(n); ++q)
    if (n % q == 0) return q;
  return 0;
}

}  // namespace

SylowDecomposition sylow_glue_decomposition(const Lattice& l, const IntMatrix& l1_basis, const IntMatrix& f,
                                            std::int64_t p) {
  Sublattice s1(l, l1_basis);
  if (!s1.is_primitive()) throw PreconditionError("L1 is not primitive");
  if (!s1.is_invariant(f)) throw PreconditionError("L1 is not f-stable");
  Sublattice s2 = s1.orthogonal_complement();
  IntMatrix f1 = s1.restrict_isometry(f), f2 = s2.restrict_isometry(f);
  SylowDecomposition out;
  out.p = p;
  out.resultant = resultant(char_poly(f1), char_poly(f2));
  if (mod(out.resultant, Int(static_cast<long>(p))) == 0)
    throw PreconditionError("p = " + std::to_string(p) + " divides res(chi_1, chi_2) = " + out.resultant.get_str());
  Lattice l1 = s1.lattice(), l2 = s2.lattice();
  GlueGroup g(l), g1(l1), g2(l2);
  out.g = sylow_invariants(g, p);
  out.g1 = sylow_invariants(g1, p);
  out.g2 = sylow_invariants(g2, p);

  struct Part {
    const GlueGroup* grp;
    const IntMatrix* basis;
    const IntMatrix* iso;
    std::vector<GroupElement> gens, images;
  };
  std::vector<Part> parts{{&g1, &s1.basis(), &f1, g1.sylow_generators(p), {}},
                          {&g2, &s2.basis(), &f2, g2.sylow_generators(p), {}}};
  out.well_defined = true;
  for (auto& part : parts)
    for (const auto& e : part.gens) {
      try {
        part.images.push_back(g.element_of(push(*part.basis, part.grp->lift(e))));
      } catch (const std::exception&) {
        out.well_defined = false;
        return out;
      }
    }
  std::vector<GroupElement> all;
  for (auto& part : parts) all.insert(all.end(), part.images.begin(), part.images.end());
  std::uint64_t generated = subgroup_elements(g.group(), all).size();
  out.bijective = generated == sylow_size(g, p) && generated == sylow_size(g1, p) * sylow_size(g2, p);

  out.form_preserved = true;
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t i = 0; i < parts[a].gens.size(); ++i) {
      const auto& pa = parts[a];
      if (g.even() && pa.grp->even() && g.q(pa.images[i]) != pa.grp->q(pa.gens[i])) out.form_preserved = false;
      for (std::size_t j = 0; j < pa.gens.size(); ++j)
        if (g.b(pa.images[i], pa.images[j]) != pa.grp->b(pa.gens[i], pa.gens[j])) out.form_preserved = false;
      for (const auto& other : parts[1 - a].images)
        if (g.b(pa.images[i], other) != 0) out.form_preserved = false;
    }

  IntMatrix act = g.action_matrix(f);
  out.equivariant = true;
  for (auto& part : parts) {
    IntMatrix act_i = part.grp->action_matrix(*part.iso);
    for (std::size_t i = 0; i < part.gens.size(); ++i) {
      GroupElement fe = part.grp->apply(act_i, part.gens[i]);
      GroupElement img = g.element_of(push(*part.basis, part.grp->lift(fe)));
      if (img != g.apply(act, part.images[i])) out.equivariant = false;
    }
  }
  return out;
}

CoprimeGlueReport coprime_order_glue_predicates(const Lattice& l1, const IntMatrix& f1, const Lattice& l2,
                                                const IntMatrix& f2, const GluingMap& phi) {
  CoprimeGlueReport out;
  auto o1 = matrix_order(f1), o2 = matrix_order(f2);
  if (!o1 || !o2) {
    out.note = "an isometry has infinite order";
    return out;
  }
  out.n1 = *o1;
  out.n2 = *o2;
  if (std::gcd(out.n1, out.n2) != 1) {
    out.note = "orders are not coprime";
    return out;
  }
  out.applicable = true;
  GlueGroup g1(l1), g2(l2);
  IntMatrix a1 = g1.action_matrix(f1), a2 = g2.action_matrix(f2);
  out.identity_on_h1 = out.identity_on_h2 = true;
  for (const auto& e : phi.h1) out.identity_on_h1 = out.identity_on_h1 && g1.apply(a1, e) == e;
  for (const auto& e : phi.h2) out.identity_on_h2 = out.identity_on_h2 && g2.apply(a2, e) == e;
  out.h_order = phi.order;

  CyclotomicSplit split = split_cyclotomic(char_poly(f1));
  if (split.rest.degree() == 0 && split.cyclotomic.size() == 1) {
    unsigned n = split.cyclotomic.begin()->first;
    std::int64_t q = prime_of(n);
    unsigned m = n;
    while (q && m % q == 0) m /= static_cast<unsigned>(q);
    if (q && m == 1) {
      out.p = q;
      auto elems = subgroup_elements(g1.group(), phi.h1);
      bool elementary = true;
      for (const auto& e : elems) elementary = elementary && g1.group().is_zero(g1.group().scale(e, q));
      out.p_elementary = elementary;
    }
    if (split.cyclotomic.begin()->second == 1 && (n == 5 || n == 7 || n == 9)) {
      out.p = prime_of(n);
      out.order_one_or_p = phi.order == 1 || phi.order == static_cast<std::uint64_t>(out.p);
    }
  }
  return out;
}

Theorem46Shape theorem46_shape(const Lattice& l1, const Lattice& l2, unsigned n1) {
  if (n1 != 5 && n1 != 7 && n1 != 9) throw PreconditionError("n1 must be 5, 7 or 9");
  if (l1.rank() + l2.rank() != 12) throw PreconditionError("ranks of L1 and L2 must add up to 12");
  Theorem46Shape out;
  out.n1 = n1;
  out.p = prime_of(n1);
  GlueGroup g1(l1), g2(l2);
  auto twos = [](const AbelianInvariants& inv) {
    int c = 0;
    for (auto d : inv) c += d == 2;
    return c;
  };
  AbelianInvariants i1 = g1.invariants(), i2 = g2.invariants();
  out.k = twos(i1);
  out.g1_ok = is_shape(i1, out.k, out.p);
  out.g2_ok = is_shape(i2, 10 - out.k, out.p);
  Signature s = l1.signature();
  out.obligation = out.k == static_cast<int>(l1.rank()) && s.positive == 2 &&
                   s.negative == static_cast<int>(l1.rank()) - 2;
  if (out.obligation) {
    if (!(l2.is_negative_definite() || l2.is_positive_definite()))
      throw PreconditionError("L2 must be definite when the root obligation applies");
    out.l2_roots = roots(l2).size();
    out.l2_has_roots = out.l2_roots > 0;
  }
  return out;
}

bool hermite_forces_roots(std::size_t rank, const Int& det) {
  // gamma_n^n as fractions
  static const std::vector<std::pair<long, long>> gamma_pow{{1, 1}, {1, 1}, {4, 3}, {2, 1}, {4, 1},
                                                            {8, 1}, {64, 3}, {64, 1}, {256, 1}};
  if (rank == 0 || rank >= gamma_pow.size()) throw PreconditionError("Hermite constants known for rank <= 8");
  auto [num, den] = gamma_pow[rank];
  Int four_n = 1;
  for (std::size_t i = 0; i < rank; ++i) four_n *= 4;
  return Int(num) * abs(det) < four_n * Int(den);
}

bool has_theorem46_invariants(const Lattice& l) {
  if (l.rank() != 8 || !l.is_even() || !l.is_negative_definite()) return false;
  GlueGroup g(l);
  if (g.invariants() != primary_invariants({2, 2, 2, 2, 2, 2, 5})) return false;
  for (const auto& e : g.sylow_generators(2))
    if (g.b(e, e) != 0) return false;
  Lattice l0 = rescale(principal_lattice(cyclotomic(5)).lattice, 2);
  GlueGroup g0(l0);
  auto five0 = g0.sylow_generators(5), five = g.sylow_generators(5);
  if (five0.size() != 1 || five.size() != 1) return false;
  Rat target = 2 - g0.q(five0[0]);
  for (std::int64_t k = 1; k < 5; ++k)
    if (g.q(g.group().scale(five[0], k)) == target) return true;
  return false;
}

Lattice theorem46_genus_seed() {
  Lattice m = direct_sum(lattice_A(4), lattice_D(4));
  // kernels of x -> (a.x, b.x) mod 2 for pairs a < b of nonzero vectors of F_2^8
  for (unsigned a = 1; a < 256; ++a)
    for (unsigned b = a + 1; b < 256; ++b) {
      IntMatrix big(2, 10);
      for (int j = 0; j < 8; ++j) {
        big(0, j) = (a >> j) & 1;
        big(1, j) = (b >> j) & 1;
      }
      big(0, 8) = 2;
      big(1, 9) = 2;
      IntMatrix ker = integer_kernel(big);
      IntMatrix basis(ker.rows(), 8);
      for (std::size_t i = 0; i < ker.rows(); ++i)
        for (int j = 0; j < 8; ++j) basis(i, j) = ker(i, j);
      IntMatrix h = hermite_normal_form(basis);
      if (h.rows() != 8) continue;
      Lattice s = sublattice_gram(m, h, "theorem 4.6 seed");
      if (abs(s.det()) == 320 && has_theorem46_invariants(s)) return s;
    }
  throw std::logic_error("no index-4 sublattice of A4 + D4 has the required invariants");
}

}  // namespace salemforge
