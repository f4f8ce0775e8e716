#include <gtest/gtest.h>

#include <functional>
#include <set>

#include "oracles.hpp"
#include "salemforge/enriques/quadruple.hpp"
#include "salemforge/enriques/ruleout.hpp"
#include "salemforge/enriques/tables.hpp"
#include "salemforge/enriques/tau8.hpp"
#include "salemforge/exactalg/salem.hpp"
#include "salemforge/isom/autgroup.hpp"

using namespace salemforge;

namespace {

const std::string kData = SALEMFORGE_DATA_DIR;

EnriquesQuadruple recorded_tau8() {
  return quadruple_from_json(io::read_file(kData + "/quadruples/tau8_seed1.json"));
}

// Multisets of cyclotomic indices with total degree d, by a separate recursion over k <= 2 d^2 + 2.
std::set<std::vector<unsigned>> cyclotomic_multisets(int d) {
  std::vector<unsigned> ks;
  for (unsigned k = 1; k <= 2u * d * d + 2; ++k)
    if (static_cast<int>(euler_phi(k)) <= d) ks.push_back(k);
  std::set<std::vector<unsigned>> out;
  std::vector<unsigned> cur;
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (left == 0) {
      out.insert(cur);
      return;
    }
    for (std::size_t j = i; j < ks.size(); ++j) {
      int e = static_cast<int>(euler_phi(ks[j]));
      if (e > left) continue;
      cur.push_back(ks[j]);
      rec(j, left - e);
      cur.pop_back();
    }
  };
  rec(0, d);
  return out;
}

}  // namespace

TEST(CharpolyCompat, Examples) {
  IntPoly plus = salem_candidate(8) * pow(cyclotomic(4), 2);
  EXPECT_TRUE(charpoly_compat(plus, pow(cyclotomic(8), 3)));
  EXPECT_TRUE(charpoly_compat(plus, pow(cyclotomic(1), 12)));
  EXPECT_FALSE(charpoly_compat(plus, pow(cyclotomic(3), 6)));
  EXPECT_THROW(charpoly_compat(salem_candidate(8), pow(cyclotomic(8), 3)), PreconditionError);
}

TEST(FiniteOrderCandidates, AgreeWithBruteForce) {
  for (int tau : {1, 3, 8}) {
    IntPoly s = salem_candidate(tau);
    IntPoly c = s.degree() == 10 ? IntPoly{1} : pow(cyclotomic(1), 10 - s.degree());
    Gf2Poly target = Gf2Poly(3) * Gf2Poly(3) * Gf2Poly::from_int_poly(s * c);
    std::set<std::vector<unsigned>> expect;
    for (const auto& m : cyclotomic_multisets(12)) {
      IntPoly p{1};
      for (unsigned k : m) p = p * cyclotomic(k);
      if (Gf2Poly::from_int_poly(p) == target) expect.insert(m);
    }
    std::set<std::vector<unsigned>> got;
    for (const auto& cp : finite_order_charpoly_candidates(target, 12)) {
      EXPECT_EQ(cp.poly.degree(), 12);
      got.insert(cp.indices);
    }
    EXPECT_EQ(got, expect) << tau;
  }
}

TEST(RuleOutStages, PlusCharpolysDropUnimodularSplits) {
  IntPoly s3 = salem_candidate(3);
  PlusCharpolys p = plus_charpolys(s3);
  for (const auto& c : p.kept) EXPECT_NE(abs(oracle::sylvester_resultant(s3, c.poly)), 1);
  for (const auto& c : p.dropped) EXPECT_EQ(abs(oracle::sylvester_resultant(s3, c.poly)), 1);
  EXPECT_EQ(p.kept.size() + p.dropped.size(), cyclotomic_multisets(2).size());
  ASSERT_EQ(p.residues.size(), 1u);
  EXPECT_EQ(p.residues[0], Gf2Poly(3) * Gf2Poly(3) * Gf2Poly::from_int_poly(s3));
}

TEST(RuleOutStages, KernelLengths) {
  EXPECT_EQ(kernel_length_options(cyclotomic(15), 8, 4), std::vector<int>{8});
  EXPECT_EQ(kernel_length_options(cyclotomic(7), 6, 6), std::vector<int>{6});
  EXPECT_EQ(kernel_length_options(cyclotomic(8), 4, 8), (std::vector<int>{2, 3, 4}));
}

TEST(Axiom, FiresOnlyOnE8TwoAndUU2) {
  Budget& b = unlimited_budget();
  Lattice e82 = rescale(lattice_E(8), 2);
  Lattice uu2 = direct_sum(lattice_U(1), lattice_U(2));
  EXPECT_TRUE(obstruction_E8_UU2(e82, uu2, b).fires);
  EXPECT_FALSE(obstruction_E8_UU2(e82, direct_sum(lattice_U(1), lattice_U(1)), b).fires);
  EXPECT_FALSE(obstruction_E8_UU2(rescale(lattice_D(8), 2), uu2, b).fires);
}

TEST(RuleOut, Tau3EndsWithOneAxiom) {
  RuleOutConfig c;
  c.data_dir = kData;
  RuleOutTrace t = rule_out(3, c, unlimited_budget());
  EXPECT_EQ(t.status, RuleOutTrace::Status::RuledOut);
  EXPECT_EQ(t.axiom_steps(), 1u);
  EXPECT_EQ(t.steps.back().kind, "AXIOM");
}

TEST(RuleOut, StageCutoffAndUnimplementedAreInconclusive) {
  RuleOutConfig c;
  c.data_dir = kData;
  c.max_stage = 3;
  EXPECT_EQ(rule_out(3, c, unlimited_budget()).status, RuleOutTrace::Status::Inconclusive);
  c.max_stage = 6;
  for (int i : {2, 4, 5, 6, 7}) EXPECT_EQ(rule_out(i, c, unlimited_budget()).status, RuleOutTrace::Status::Inconclusive) << i;
  Budget tiny(5);
  EXPECT_THROW(rule_out(1, c, tiny), BudgetExhausted);
}

TEST(Tau8, StageAAndB) {
  Budget& b = unlimited_budget();
  Tau8StageA a = tau8_stage_a(b);
  EXPECT_TRUE(a.principal.lattice.is_even());
  EXPECT_EQ(a.principal.lattice.signature().positive, 3);
  EXPECT_EQ(a.principal.lattice.signature().negative, 3);
  EXPECT_EQ(abs(a.principal.lattice.det()), 4);
  EXPECT_EQ(a.twisted.lattice.signature().positive, 1);
  EXPECT_EQ(a.twisted_glue_order, 2u);
  EXPECT_EQ(a.d4_usable, 1u);
  EXPECT_EQ(a.glued_class, "II_{1,9}");
  EXPECT_EQ(a.fplus_glue_order, 8u);
  PLattice l2 = tau8_stage_b();
  EXPECT_EQ(invariants_string(GlueGroup(l2.lattice).invariants()), "(Z/4)^4");
  Lattice i22 = rescale(lattice_I(2, 2), 4);
  auto w = find_isometry_box(l2.lattice, i22, 2, b);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->transpose() * i22.gram() * *w, l2.lattice.gram());
}

TEST(Quadruple, RecordedTau8VerifiesAndSignFlips) {
  EnriquesQuadruple q = recorded_tau8();
  QuadrupleReport r = verify_quadruple(q, unlimited_budget());
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.conditions.size(), 8u);
  EXPECT_GT(r.hh, 0);
  EXPECT_EQ(r.rh, 0u);
  EXPECT_EQ(r.sh, 0u);
  EXPECT_TRUE(verify_quadruple(sign_flip(q), unlimited_budget()).passed());
  EnriquesQuadruple back = quadruple_from_json(io::Json::parse(quadruple_to_json(q).dump()));
  EXPECT_EQ(back.lminus.gram(), q.lminus.gram());
  EXPECT_EQ(back.fplus, q.fplus);
  EXPECT_TRUE(verify_quadruple(back, unlimited_budget()).passed());
}

TEST(Quadruple, BrokenQuadrupleFails) {
  EnriquesQuadruple q = recorded_tau8();
  q.fplus = IntMatrix::identity(q.fplus.rows());
  QuadrupleReport r = verify_quadruple(q, unlimited_budget());
  EXPECT_FALSE(r.passed());
  EXPECT_FALSE(r.conditions[0].pass);
  EnriquesQuadruple bad = recorded_tau8();
  bad.fminus(0, 0) += 1;
  EXPECT_THROW(check_structure(bad), PreconditionError);
}

TEST(Tables, FixturesReproduce) {
  for (int n = 1; n <= 3; ++n) {
    TableReport r = reproduce_table(n, kData);
    EXPECT_TRUE(r.all_match()) << n;
    for (const auto& row : r.rows) EXPECT_TRUE(row.match) << row.key << ": " << row.detail;
  }
  EXPECT_EQ(reproduce_table(2, kData).rows.size(), 26u);
  EXPECT_TRUE(truncation_brackets("1.58234", salem_candidate(8)));
  EXPECT_FALSE(truncation_brackets("1.58235", salem_candidate(8)));
}
