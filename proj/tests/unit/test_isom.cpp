#include <gtest/gtest.h>

#include <functional>
#include <unordered_set>

#include "salemforge/isom/autgroup.hpp"
#include "salemforge/isom/isometry.hpp"
#include "salemforge/lattice/glue.hpp"

using namespace salemforge;

namespace {

// Naive count: all image tuples of the given basis among short vectors matching the Gram matrix.
std::uint64_t naive_isometry_count(const Lattice& l) {
  IntMatrix g = l.is_negative_definite() ? IntMatrix(-l.gram()) : l.gram();
  Lattice pos(g);
  std::int64_t cutoff = 0;
  for (std::size_t i = 0; i < l.rank(); ++i) cutoff = std::max(cutoff, to_int64(g(i, i)));
  std::vector<IntVector> vs;
  for (auto& sv : short_vectors(pos, cutoff)) {
    vs.push_back(to_int(sv.v));
    IntVector m = to_int(sv.v);
    for (auto& c : m) c = -c;
    vs.push_back(m);
  }
  std::size_t n = l.rank();
  std::vector<IntVector> img(n);
  std::uint64_t count = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == n) {
      ++count;
      return;
    }
    for (auto& v : vs) {
      if (pos.norm(v) != g(k, k)) continue;
      bool ok = true;
      for (std::size_t j = 0; j < k && ok; ++j) ok = pos.inner(v, img[j]) == g(k, j);
      if (!ok) continue;
      img[k] = v;
      rec(k + 1);
    }
  };
  rec(0);
  return count;
}

}  // namespace

TEST(AutGroup, OrdersMatchNaiveCount) {
  for (const char* name : {"A2", "A4", "D4", "A6(2)", "D4+A2"}) {
    Lattice l = lattice_from_name(name);
    AutomorphismGroup g = automorphism_group(l);
    EXPECT_EQ(g.order(), Int(static_cast<unsigned long>(naive_isometry_count(l)))) << name;
    for (auto& m : g.generators()) EXPECT_TRUE(is_isometry(l, m.to_int()));
  }
}

TEST(AutGroup, E8OrderFromWeylDegrees) {
  // |W(E8)| = product of the fundamental degrees 2, 8, 12, 14, 18, 20, 24, 30; E8 has no diagram symmetry
  Int w = 1;
  for (long d : {2, 8, 12, 14, 18, 20, 24, 30}) w *= d;
  EXPECT_EQ(automorphism_group(lattice_E(8)).order(), w);
  // E6: degrees 2, 5, 6, 8, 9, 12 times the diagram flip
  Int w6 = 2;
  for (long d : {2, 5, 6, 8, 9, 12}) w6 *= d;
  EXPECT_EQ(automorphism_group(lattice_E(6)).order(), w6);
}

TEST(AutGroup, ElementEnumerationIsTheGroup) {
  Lattice l = lattice_D(4);
  AutomorphismGroup g = automorphism_group(l);
  std::unordered_set<SmallMatrix, SmallMatrixHash> seen;
  Budget b;
  g.for_each_element(
      [&](const SmallMatrix& m) {
        EXPECT_TRUE(is_isometry(l, m.to_int()));
        seen.insert(m);
        return true;
      },
      b);
  EXPECT_EQ(Int(static_cast<unsigned long>(seen.size())), g.order());
}

TEST(Isometric, DefiniteAndIndefinite) {
  Budget b;
  // E8 in a scrambled basis
  Lattice e8 = lattice_E(8);
  IntMatrix u = IntMatrix::identity(8);
  for (std::size_t i = 1; i < 8; ++i) u(i - 1, i) = 1;  // upper unitriangular
  u(0, 7) = -1;
  u(2, 5) = 2;
  Lattice e8b(u * e8.gram() * u.transpose());
  auto m = find_isometry(e8, e8b, b);
  ASSERT_TRUE(m);
  EXPECT_EQ(m->transpose() * e8b.gram() * *m, e8.gram());
  EXPECT_EQ(isometric(lattice_from_name("A2+A2"), lattice_from_name("A2+A2"), b), Tri::Yes);
  EXPECT_EQ(isometric(lattice_from_name("D4"), lattice_from_name("A1+A1+A1+A1"), b), Tri::No);
  // U + U(2) written in another basis
  Lattice uu2 = lattice_from_name("U+U(2)");
  IntMatrix v{{1, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 1}};
  Lattice other(v * uu2.gram() * v.transpose());
  EXPECT_EQ(isometric(uu2, other, b), Tri::Yes);
}

TEST(Isometry, OrderMinpolyGlueOrder) {
  // Coxeter element of A2 has order 3
  IntMatrix s1{{-1, 1}, {0, 1}}, s2{{1, 0}, {1, -1}};
  Lattice a2 = lattice_A(2);
  EXPECT_TRUE(is_isometry(a2, s1));
  EXPECT_TRUE(is_isometry(a2, s2));
  IntMatrix c = s1 * s2;
  EXPECT_EQ(*matrix_order(c), 3u);
  EXPECT_EQ(minimal_polynomial(c), cyclotomic(3));
  EXPECT_EQ(char_poly(c), cyclotomic(3));
  // reflections act trivially on G(A2) = Z/3
  EXPECT_EQ(glue_action_order(a2, s1), 1u);
  EXPECT_EQ(glue_action_order(a2, IntMatrix(-IntMatrix::identity(2))), 2u);
  EXPECT_EQ(companion_matrix(cyclotomic(5)).rows(), 4u);
  EXPECT_EQ(char_poly(companion_matrix(cyclotomic(5))), cyclotomic(5));
}
