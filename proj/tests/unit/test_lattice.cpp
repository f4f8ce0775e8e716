#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "oracles.hpp"
#include "salemforge/lattice/enumerate.hpp"
#include "salemforge/lattice/glue.hpp"
#include "salemforge/lattice/sublattice.hpp"

using namespace salemforge;

namespace {

IntMatrix random_positive_definite(std::mt19937_64& rng, std::size_t n) {
  for (;;) {
    IntMatrix a = oracle::random_matrix(rng, n, n, -2, 2);
    if (determinant(a) == 0) continue;
    IntMatrix g = a.transpose() * a;
    return g;
  }
}

}  // namespace

TEST(ShortVectors, MatchBoxOracle) {
  std::mt19937_64 rng(1234);
  std::uniform_int_distribution<int> sz(1, 4);
  for (int t = 0; t < 50; ++t) {
    std::size_t n = sz(rng);
    IntMatrix g = random_positive_definite(rng, n);
    std::int64_t bound = 4 + t % 7;
    std::set<SmallVector> expected = oracle::box_vectors(g, bound);
    auto got = short_vectors(Lattice(g), bound);
    std::set<SmallVector> gs;
    for (auto& sv : got) {
      EXPECT_EQ(Int(static_cast<long>(sv.norm)), bilinear(g, to_int(sv.v), to_int(sv.v)));
      SmallVector y = sv.v;
      std::size_t k = n;
      while (k-- > 0 && y[k] == 0) {}
      if (y[k] < 0)
        for (auto& c : y) c = -c;
      gs.insert(y);
    }
    EXPECT_EQ(gs.size(), got.size()) << "duplicate +-pairs";
    EXPECT_EQ(gs, expected);
  }
}

TEST(ShortVectors, E8RootsMatchCoordinateModel) {
  // E8 = {x in Z^8 u (Z+1/2)^8 : sum x even}; count norm-2 vectors directly
  int count = 0;
  for (int mask = 0; mask < 6561; ++mask) {
    int m = mask, s = 0, nn = 0;
    for (int i = 0; i < 8; ++i) {
      int c = m % 3 - 1;
      m /= 3;
      s += c;
      nn += c * c;
    }
    if (nn == 2 && s % 2 == 0) ++count;
  }
  for (int mask = 0; mask < 256; ++mask)
    if (__builtin_popcount(mask) % 2 == 0) ++count;  // (+-1/2)^8 with even number of minus signs
  EXPECT_EQ(count, 240);
  EXPECT_EQ(2 * roots(lattice_E(8)).size(), static_cast<std::size_t>(count));
}

TEST(ShortVectors, ADERootCountsByBoxOracle) {
  for (const char* name : {"A1", "A2", "A4", "D4", "A6"}) {
    Lattice l = lattice_from_name(name);
    IntMatrix g = -l.gram();
    EXPECT_EQ(roots(l).size(), oracle::box_vectors(g, 2).size()) << name;
  }
}

TEST(Lll, ReducedAndEquivalent) {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 50; ++t) {
    std::size_t n = 2 + t % 5;
    IntMatrix g = random_positive_definite(rng, n);
    IntMatrix u = oracle::random_unimodular(rng, n, 30);
    IntMatrix g2 = u * g * u.transpose();
    LllResult r = lll_reduce(g2);
    EXPECT_EQ(r.transform * g2 * r.transform.transpose(), r.gram);
    EXPECT_EQ(abs(determinant(r.transform)), 1);
    // Gram-Schmidt over Q: size reduction and Lovasz with delta = 3/4
    RatMatrix q = to_rat(r.gram);
    std::vector<Rat> bstar(n);
    RatMatrix mu(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        Rat s = q(i, j);
        for (std::size_t k = 0; k < j; ++k) s -= mu(j, k) * mu(i, k) * bstar[k];
        mu(i, j) = s / bstar[j];
        EXPECT_LE(abs(mu(i, j)), Rat(1, 2));
      }
      Rat s = q(i, i);
      for (std::size_t k = 0; k < i; ++k) s -= mu(i, k) * mu(i, k) * bstar[k];
      bstar[i] = s;
      if (i > 0) EXPECT_GE(bstar[i], (Rat(3, 4) - mu(i, i - 1) * mu(i, i - 1)) * bstar[i - 1]);
    }
  }
}

TEST(Glue, StandardDiscriminantGroups) {
  struct Case {
    const char* name;
    AbelianInvariants inv;
  };
  for (const Case& c : {Case{"A1", {2}}, Case{"A6", {7}}, Case{"D4", {2, 2}}, Case{"E6", {3}}, Case{"E7", {2}},
                        Case{"E8", {}}, Case{"U(2)", {2, 2}}, Case{"E10(2)", {2, 2, 2, 2, 2, 2, 2, 2, 2, 2}},
                        Case{"I_{2,2}(4)", {4, 4, 4, 4}}}) {
    Lattice l = lattice_from_name(c.name);
    GlueGroup g(l);
    EXPECT_EQ(g.invariants(), c.inv) << c.name;
    EXPECT_EQ(Int(static_cast<long>(g.size())), abs(l.det()));
  }
  // A1: q(e/2) = -1/2 = 3/2 mod 2
  GlueGroup a1(lattice_A(1));
  EXPECT_EQ(a1.q(a1.unit(0)), Rat(3, 2));
  // D4: all three nonzero classes have q = 1 mod 2
  GlueGroup d4(lattice_D(4));
  for (auto& x : subgroup_elements(d4.group(), {d4.unit(0), d4.unit(1)}))
    if (!d4.group().is_zero(x)) EXPECT_EQ(d4.q(x), Rat(1));
  EXPECT_TRUE(delta_is_zero(GlueGroup(lattice_from_name("E10(2)"))));
  EXPECT_FALSE(delta_is_zero(GlueGroup(lattice_A(1))));
}

TEST(Glue, ElementRoundTripAndForms) {
  std::mt19937_64 rng(17);
  for (const char* name : {"A4", "D4+A2", "U(2)+A3", "E6(2)"}) {
    Lattice l = lattice_from_name(name);
    GlueGroup g(l);
    auto elems = subgroup_elements(g.group(), [&] {
      std::vector<GroupElement> gs;
      for (std::size_t i = 0; i < g.num_generators(); ++i) gs.push_back(g.unit(i));
      return gs;
    }());
    EXPECT_EQ(elems.size(), g.size());
    for (auto& x : elems) {
      RatVector v = g.lift(x);
      EXPECT_EQ(g.element_of(v), x);
      // q from the lifted vector agrees mod 2
      Rat qv = l.inner(v, v);
      Rat diff = qv - g.q(x);
      EXPECT_EQ(diff.get_den(), 1);
      EXPECT_TRUE(mpz_even_p(diff.get_num().get_mpz_t()));
      for (int k = 0; k < 3; ++k) {
        auto& y = elems[rng() % elems.size()];
        Rat bd = l.inner(v, g.lift(y)) - g.b(x, y);
        EXPECT_EQ(bd.get_den(), 1);
      }
    }
    // Milgram: Gauss sum equals exp(2 pi i sig / 8)
    auto [re, im] = gauss_sum(g, elems);
    Signature s = l.signature();
    double ang = 2 * std::acos(-1.0) * (s.positive - s.negative) / 8.0;
    EXPECT_NEAR(re, std::cos(ang), 1e-9) << name;
    EXPECT_NEAR(im, std::sin(ang), 1e-9) << name;
  }
}

TEST(Rescale, HalvingNeedsTwoElementaryEvenGlue) {
  EXPECT_EQ(rescale(lattice_from_name("E8(2)"), Rat(1, 2)).gram(), lattice_E(8).gram());
  EXPECT_EQ(rescale(lattice_U(2), Rat(1, 2)).gram(), lattice_U().gram());
  EXPECT_THROW(rescale(lattice_D(4), Rat(1, 2)), PreconditionError);  // G_2 has rank 2 < 4
  EXPECT_EQ(rescale(lattice_from_name("A1(2)"), Rat(1, 4)).gram(), lattice_diag({-1}).gram());
  // <-4>: G = Z/4 is not F_2
  EXPECT_THROW(rescale(lattice_diag({-4}), Rat(1, 2)), PreconditionError);
  // <-2> = A1: G = F_2 but b(x, x) = 1/2
  EXPECT_THROW(rescale(lattice_A(1), Rat(1, 2)), PreconditionError);
  EXPECT_THROW(rescale(lattice_E(8), Rat(1, 3)), PreconditionError);
}

TEST(Classify, EvenUnimodular) {
  auto c = classify_even_unimodular(lattice_E10());
  ASSERT_TRUE(c);
  EXPECT_EQ(c->name, "II_{1,9}");
  auto d = classify_even_unimodular(lattice_II(3, 19));
  ASSERT_TRUE(d);
  EXPECT_EQ(d->name, "II_{3,19}");
  EXPECT_EQ(lattice_II(3, 19).rank(), 22u);
  EXPECT_FALSE(classify_even_unimodular(lattice_I(1, 9)));
  EXPECT_EQ(classify_even_unimodular(lattice_E(8))->name, "E8");
}

TEST(Sublattice, ComplementAndSaturation) {
  Lattice l = lattice_E10();
  IntMatrix b(1, 10);
  b(0, 0) = 2;
  b(0, 1) = 2;  // 2(e + f) in U, not primitive
  Sublattice s(l, b);
  EXPECT_FALSE(s.is_primitive());
  Sublattice sat = s.saturation();
  EXPECT_TRUE(sat.is_primitive());
  Sublattice perp = sat.orthogonal_complement();
  EXPECT_EQ(perp.rank(), 9u);
  EXPECT_TRUE((perp.basis() * l.gram() * sat.basis().transpose()).is_zero());
  Signature sp = perp.lattice().signature();
  EXPECT_EQ(sp.positive, 0);
  EXPECT_EQ(sp.negative, 9);
}
