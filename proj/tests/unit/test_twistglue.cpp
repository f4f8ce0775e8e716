#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "properties.hpp"
#include "salemforge/enriques/ruleout.hpp"
#include "salemforge/exactalg/salem.hpp"
#include "salemforge/io/jsonio.hpp"
#include "salemforge/twistglue/constraints.hpp"
#include "salemforge/twistglue/principal.hpp"
#include "salemforge/twistglue/units.hpp"

using namespace salemforge;

namespace {

// Even binary forms [[2a, b], [b, 2c]] up to the reduction 0 <= b <= a <= c with |det| = d.
bool every_binary_form_has_roots(long d) {
  for (long a = 1; 4 * a * a <= 4 * d; ++a)
    for (long b = 0; b <= a; ++b)
      for (long c = a; 4 * a * c - b * b <= d; ++c)
        if (4 * a * c - b * b == d && a != 1) return false;
  return true;
}

}  // namespace

TEST(Principal, DeterminantIsNormOfOneMinusXSquared) {
  for (int i = 1; i <= 8; ++i) {
    IntPoly s = salem_candidate(i);
    PLattice l = principal_lattice(s);
    EXPECT_TRUE(l.lattice.is_even()) << i;
    EXPECT_TRUE(is_isometry(l.lattice, l.f)) << i;
    EXPECT_EQ(char_poly(l.f), s) << i;
    EXPECT_EQ(abs(l.lattice.det()), abs(s.eval(Int(1)) * s.eval(Int(-1)))) << i;
  }
}

TEST(Twist, DeterminantScalesBySquaredNorm) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<long> c(-3, 3);
  for (const IntPoly& s : {cyclotomic(8), salem_candidate(8), salem_candidate(2)}) {
    PLattice l0 = principal_lattice(s);
    IntPoly r = trace_polynomial(s);
    for (int t = 0; t < 6; ++t) {
      IntPoly a({Int(c(rng)), Int(c(rng))});
      Int na = oracle::sylvester_resultant(r, a);
      if (na == 0) continue;
      PLattice tw;
      try {
        tw = twist(l0, a);
      } catch (const PreconditionError&) {
        continue;  // a not totally positive or negative where required
      }
      EXPECT_TRUE(is_isometry(tw.lattice, tw.f));
      EXPECT_EQ(char_poly(tw.f), s);
      EXPECT_EQ(abs(tw.lattice.det()), abs(l0.lattice.det()) * na * na) << a.to_string('y');
    }
  }
}

TEST(Units, Tau1DataFileIsCertified) {
  IntPoly s = salem_candidate(1);
  io::UnitData ud = io::units_from_json(io::read_file(io::units_path(SALEMFORGE_DATA_DIR, s)));
  EXPECT_EQ(ud.polynomial, s);
  EXPECT_EQ(ud.trace_polynomial, trace_polynomial(s));
  ASSERT_EQ(ud.representatives.size(), 32u);
  // units: norm +-1; classes: distinct quadratic character vectors at the roots of R mod small primes
  UnitSquareClasses u = unit_square_classes(ud.trace_polynomial, 3);
  ASSERT_TRUE(u.complete);
  std::set<std::vector<int>> seen;
  for (const auto& a : ud.representatives) {
    EXPECT_EQ(abs(oracle::sylvester_resultant(ud.trace_polynomial, a.degree() < 0 ? IntPoly{1} : a)), 1);
    std::vector<int> chi;
    for (auto [p, r] : u.characters) chi.push_back(quadratic_character(a, p, r));
    seen.insert(chi);
  }
  EXPECT_EQ(seen.size(), 32u);
}

TEST(Units, Tau1TwistsInE10) {
  IntPoly s = salem_candidate(1);
  io::UnitData ud = io::units_from_json(io::read_file(io::units_path(SALEMFORGE_DATA_DIR, s)));
  PLattice l0 = principal_lattice(s);
  int hits = 0;
  for (const auto& a : ud.representatives) {
    PLattice t = twist(l0, a);
    EXPECT_EQ(abs(t.lattice.det()), 1);
    if (t.lattice.signature().positive == 1) {
      auto c = classify_even_unimodular(t.lattice);
      ASSERT_TRUE(c.has_value());
      EXPECT_EQ(c->name, "II_{1,9}");
      ++hits;
    }
  }
  EXPECT_EQ(hits, 4);
}

TEST(Feasibility, ResultantsAndPrimes) {
  EXPECT_EQ(feasible_primes(salem_candidate(5)), (std::vector<std::uint64_t>{2, 5}));
  IntPoly s3 = salem_candidate(3);
  EXPECT_EQ(abs(resultant(cyclotomic(3), s3)), 1);
  EXPECT_EQ(abs(resultant(cyclotomic(6), s3)), 1);
  EXPECT_EQ(abs(oracle::sylvester_resultant(cyclotomic(3), s3)), 1);
  EXPECT_EQ(abs(oracle::sylvester_resultant(cyclotomic(6), s3)), 1);
  // every feasible prime divides some res(S, Phi_k), phi(k) <= 12 - deg S
  for (int i = 1; i <= 8; ++i) {
    IntPoly s = salem_candidate(i);
    std::set<std::uint64_t> expect;
    for (unsigned k : cyclotomic_indices_up_to_degree(22 - s.degree())) {
      Int r = abs(oracle::sylvester_resultant(s, cyclotomic(k)));
      for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23})
        if (r != 0 && r % p == 0) expect.insert(p);
    }
    for (auto p : feasible_primes(s)) EXPECT_TRUE(expect.count(p)) << i << " " << p;
  }
}

TEST(Glue, DeterminantLawOnRandomGluings) {
  props::PropertyResult r = props::glue_det_suite(50);
  EXPECT_TRUE(r.ok()) << r.first_failure;
  EXPECT_EQ(r.instances, 50);
}

TEST(Glue, JsonReplay) {
  Lattice a = lattice_A(2);
  Lattice b = rescale(lattice_A(2), -1);
  auto e = enumerate_gluings(a, std::nullopt, b, std::nullopt, GluingOptions{}, unlimited_budget());
  ASSERT_FALSE(e.maps.empty());
  for (const auto& m : e.maps) {
    GluingMap back = io::gluing_from_json(io::Json::parse(io::gluing_to_json(m).dump()), GlueGroup(b));
    EXPECT_EQ(glue(a, b, back).lattice.gram(), glue(a, b, m).lattice.gram());
    EXPECT_EQ(abs(glue(a, b, m).lattice.det()), 1);
  }
}

TEST(Constraints, SylowDecompositionOnGluedCandidate) {
  std::vector<std::pair<Lattice, IntMatrix>> cases = props::regression_cases(SALEMFORGE_DATA_DIR, unlimited_budget());
  ASSERT_GE(cases.size(), 28u);
  const auto& [l, f] = cases[0];
  // L1 = Ker Phi_7(f) inside the glued lattice, complement Ker S_1(f)
  Sublattice k = kernel_sublattice(l, f, cyclotomic(7));
  ASSERT_EQ(k.rank(), 6u);
  Int res = resultant(cyclotomic(7), salem_candidate(1));
  for (std::int64_t p : {3, 5, 7, 11}) {
    if (res % p == 0) {
      EXPECT_THROW(sylow_glue_decomposition(l, k.basis(), f, p), PreconditionError);
      continue;
    }
    SylowDecomposition d = sylow_glue_decomposition(l, k.basis(), f, p);
    EXPECT_TRUE(d.holds()) << p;
  }
}

TEST(Constraints, CoprimeOrders) {
  Lattice l1 = lattice_A(1);
  Lattice l2 = rescale(lattice_A(1), -1);
  IntMatrix f1{{-1}}, f2{{1}};
  auto e = enumerate_gluings(l1, f1, l2, f2, GluingOptions{}, unlimited_budget());
  ASSERT_EQ(e.maps.size(), 1u);
  CoprimeGlueReport r = coprime_order_glue_predicates(l1, f1, l2, f2, e.maps[0]);
  EXPECT_TRUE(r.applicable);
  EXPECT_EQ(r.n1, 2u);
  EXPECT_EQ(r.n2, 1u);
  EXPECT_TRUE(r.holds());
  EXPECT_EQ(r.h_order, 2u);
}

TEST(Constraints, HermiteBoundAgreesWithBinaryForms) {
  for (long d = 1; d <= 40; ++d) {
    if (d % 4 == 1 || d % 4 == 2) continue;  // no even binary form of this determinant
    if (hermite_forces_roots(2, Int(d))) EXPECT_TRUE(every_binary_form_has_roots(d)) << d;
  }
  EXPECT_TRUE(hermite_forces_roots(6, Int(112)));
  EXPECT_FALSE(hermite_forces_roots(8, Int(256)));  // E8(2) has no roots
  EXPECT_TRUE(roots(rescale(lattice_E(8), 2)).empty());
}

TEST(Constraints, GenusSeedInvariants) {
  Lattice s = theorem46_genus_seed();
  EXPECT_EQ(s.rank(), 8u);
  EXPECT_EQ(abs(s.det()), 320);
  EXPECT_TRUE(has_theorem46_invariants(s));
  EXPECT_TRUE(s.is_negative_definite());
  EXPECT_FALSE(has_theorem46_invariants(lattice_E(8)));
}
