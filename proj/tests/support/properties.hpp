// Randomized property suites shared by the unit tests and the acceptance binary.
#pragma once

#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "salemforge/enriques/ruleout.hpp"
#include "salemforge/enriques/tau8.hpp"
#include "salemforge/exactalg/linalg.hpp"
#include "salemforge/exactalg/signature.hpp"
#include "salemforge/isom/charpoly_search.hpp"
#include "salemforge/isom/isometry.hpp"
#include "salemforge/lattice/lattice.hpp"
#include "salemforge/positivity/positivity.hpp"
#include "salemforge/twistglue/gluing.hpp"
#include "salemforge/twistglue/principal.hpp"

namespace props {

using namespace salemforge;

struct PropertyResult {
  std::string name;
  int instances = 0;
  int failures = 0;
  std::string first_failure;
  bool ok() const { return instances > 0 && failures == 0; }
  void fail(const std::string& why) {
    if (failures++ == 0) first_failure = why;
  }
};

// U A V = S diagonal with divisibility, U and V unimodular, prefix products equal the minor gcds.
inline PropertyResult smith_suite(int n = 200, std::uint64_t seed = 2024) {
  PropertyResult r{"smith normal form"};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> sz(1, 5);
  for (int t = 0; t < n; ++t, ++r.instances) {
    std::size_t rows = sz(rng), cols = sz(rng);
    IntMatrix m = oracle::random_matrix(rng, rows, cols, -6, 6);
    SmithForm sf = smith_normal_form(m);
    if (sf.U * m * sf.V != sf.S || abs(determinant(sf.U)) != 1 || abs(determinant(sf.V)) != 1) {
      r.fail("U A V != S for " + to_string(m));
      continue;
    }
    Int prod = 1;
    std::size_t k = std::min(rows, cols);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < cols; ++j)
        if (j != i && sf.S(i, j) != 0) r.fail("off-diagonal entry in S for " + to_string(m));
      if (i + 1 < k && sf.S(i, i) != 0 && sf.S(i + 1, i + 1) % sf.S(i, i) != 0) r.fail("divisibility for " + to_string(m));
      prod *= sf.S(i, i);
      if (prod != oracle::minor_gcd(m, i + 1)) r.fail("minor gcd for " + to_string(m));
    }
  }
  return r;
}

// p(A) = 0 and p(t) = det(t - A) at small integers.
inline PropertyResult cayley_hamilton_suite(int n = 200, std::uint64_t seed = 77) {
  PropertyResult r{"Cayley-Hamilton"};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> sz(1, 7);
  for (int t = 0; t < n; ++t, ++r.instances) {
    std::size_t k = sz(rng);
    IntMatrix m = oracle::random_matrix(rng, k, k, -5, 5);
    IntPoly p = char_poly(m);
    if (p.degree() != static_cast<int>(k) || !eval_matrix(p, m).is_zero()) {
      r.fail("p(A) != 0 for " + to_string(m));
      continue;
    }
    for (long x = -2; x <= 2; ++x)
      if (p.eval(Int(x)) != oracle::det_at(m, x)) r.fail("p(t) != det(t - A) for " + to_string(m));
  }
  return r;
}

// Signature is a congruence invariant and matches Jacobi's sign-change count of leading minors.
inline PropertyResult signature_suite(int n = 200, std::uint64_t seed = 9) {
  PropertyResult r{"signature congruence"};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> sz(1, 6);
  while (r.instances < n) {
    std::size_t k = sz(rng);
    IntMatrix g = oracle::random_symmetric(rng, k, -4, 4);
    std::vector<Int> minors{1};
    for (std::size_t i = 1; i <= k; ++i) {
      IntMatrix s(i, i);
      for (std::size_t a = 0; a < i; ++a)
        for (std::size_t b = 0; b < i; ++b) s(a, b) = g(a, b);
      minors.push_back(oracle::laplace_det(s));
    }
    if (std::any_of(minors.begin(), minors.end(), [](const Int& d) { return d == 0; })) continue;
    ++r.instances;
    int neg = 0;
    for (std::size_t i = 1; i <= k; ++i) neg += sgn(minors[i]) != sgn(minors[i - 1]);
    IntMatrix u = oracle::random_unimodular(rng, k, 12);
    Signature s0 = signature(g), s1 = signature(u.transpose() * g * u);
    if (s0.negative != neg || s0.positive != static_cast<int>(k) - neg) r.fail("Jacobi count differs for " + to_string(g));
    if (s1.positive != s0.positive || s1.negative != s0.negative) r.fail("congruence changes signature of " + to_string(g));
  }
  return r;
}

// Random even positive definite Gram matrix of rank 1..3 with |det| <= 48.
inline IntMatrix random_even_definite(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> sz(1, 3), off(-2, 2), diag(1, 3);
  for (;;) {
    std::size_t k = sz(rng);
    IntMatrix g(k, k);
    for (std::size_t i = 0; i < k; ++i) {
      g(i, i) = 2 * diag(rng);
      for (std::size_t j = i + 1; j < k; ++j) g(i, j) = g(j, i) = off(rng);
    }
    Lattice l(g);
    if (l.is_positive_definite() && abs(l.det()) > 1 && abs(l.det()) <= 48) return g;
  }
}

// |det(L1 +_phi L2)| = |det L1| |det L2| / |H|^2, L1 and L2 sit primitively, the glued lattice is even.
inline PropertyResult glue_det_suite(int n = 50, std::uint64_t seed = 4711) {
  PropertyResult r{"glue determinant law"};
  std::mt19937_64 rng(seed);
  int attempts = 0;
  while (r.instances < n && attempts++ < 20 * n) {
    Lattice l1(random_even_definite(rng));
    Lattice m(random_even_definite(rng));
    IntMatrix u = oracle::random_unimodular(rng, l1.rank() + m.rank(), 10);
    Lattice l2(u.transpose() * rescale(direct_sum(l1, m), -1).gram() * u);
    GluingOptions o;
    std::uniform_int_distribution<int> mode(0, 2);
    int md = mode(rng);
    if (md == 1) {
      o.domain = GluingOptions::Domain::Sylow;
      o.p = 2;
    } else if (md == 2) {
      o.domain = GluingOptions::Domain::Sylow;
      o.p = 3;
    }
    o.max_results = 12;
    GluingEnumeration e = enumerate_gluings(l1, std::nullopt, l2, std::nullopt, o, unlimited_budget());
    if (e.maps.empty()) continue;
    ++r.instances;
    const GluingMap& phi = e.maps[std::uniform_int_distribution<std::size_t>(0, e.maps.size() - 1)(rng)];
    GluedLattice gl = glue(l1, l2, phi);
    Int h = static_cast<long>(phi.order);
    if (abs(gl.lattice.det()) * h * h != abs(l1.det()) * abs(l2.det()))
      r.fail("det law fails for " + to_string(l1.gram()) + " and " + to_string(l2.gram()));
    if (!gl.lattice.is_even()) r.fail("glued lattice is odd");
    if (sublattice_gram(gl.lattice, gl.embed1).gram() != l1.gram() || sublattice_gram(gl.lattice, gl.embed2).gram() != l2.gram())
      r.fail("embeddings do not restrict to L1 and L2");
  }
  if (r.instances < n) r.fail("only " + std::to_string(r.instances) + " gluable instances");
  return r;
}

// short_vectors against the box oracle, one vector per +-pair.
inline PropertyResult short_vector_suite(int n = 50, std::uint64_t seed = 1234) {
  PropertyResult r{"short vectors vs box oracle"};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> sz(1, 4);
  while (r.instances < n) {
    std::size_t k = sz(rng);
    IntMatrix a = oracle::random_matrix(rng, k, k, -2, 2);
    if (determinant(a) == 0) continue;
    IntMatrix g = a.transpose() * a;
    std::int64_t bound = 4 + r.instances % 7;
    ++r.instances;
    std::set<SmallVector> expected = oracle::box_vectors(g, bound), got;
    auto sv = short_vectors(Lattice(g), bound);
    for (const auto& v : sv) {
      SmallVector y = v.v;
      std::size_t i = k;
      while (i-- > 0 && y[i] == 0) {}
      if (y[i] < 0)
        for (auto& c : y) c = -c;
      got.insert(y);
    }
    if (got.size() != sv.size() || got != expected) r.fail("mismatch for " + to_string(g));
  }
  return r;
}

struct RootCount {
  std::string name;
  std::size_t expected, library, oracle;
};

inline std::vector<RootCount> root_counts() {
  std::vector<RootCount> out;
  for (auto [name, n] : std::vector<std::pair<std::string, std::size_t>>{{"E8", 240}, {"E6", 72}, {"D4", 24}, {"A6", 42}}) {
    Lattice l = lattice_from_name(name);
    IntMatrix g = l.is_negative_definite() ? IntMatrix(-l.gram()) : l.gram();
    out.push_back({name, n, 2 * roots(l).size(), 2 * oracle::box_vectors(g, 2).size()});
  }
  return out;
}

// (B G B^T, B^-T f B^T) for a random unimodular B.
inline std::pair<Lattice, IntMatrix> conjugate(const Lattice& l, const IntMatrix& f, std::mt19937_64& rng) {
  IntMatrix b = oracle::random_unimodular(rng, l.rank(), 3 * static_cast<int>(l.rank()));
  Lattice lb(b * l.gram() * b.transpose());
  IntMatrix fb = transport_isometry(f, to_rat(b));
  return {lb, fb};
}

// Same verdict for other seeds, for an explicit h, and after a change of basis.
inline PropertyResult positivity_invariance(const std::vector<std::pair<Lattice, IntMatrix>>& cases, Budget& budget,
                                            std::uint64_t seed = 99) {
  PropertyResult r{"positivity invariance"};
  std::mt19937_64 rng(seed);
  for (const auto& [l, f] : cases) {
    ++r.instances;
    auto base = positivity_check(l, f, std::nullopt, budget, 0x5A1E).status;
    auto other = positivity_check(l, f, std::nullopt, budget, 0xBEEF).status;
    EigenPair e = salem_eigenpair(l, f);
    IntVector h = test_vector(l, f, e, 7, 2);
    auto explicit_h = positivity_check(l, f, h, budget).status;
    auto [lb, fb] = conjugate(l, f, rng);
    auto conj = positivity_check(lb, fb, std::nullopt, budget, 0x5A1E).status;
    if (base != other || base != explicit_h || base != conj)
      r.fail(std::string("verdicts differ: ") + to_string(base) + " " + to_string(other) + " " + to_string(explicit_h) +
             " " + to_string(conj));
  }
  return r;
}

// Regression cases: the 28 gluings of (A6(2), Phi_7) into the doubled tau_1 twists, and the tau_8
// stage A lattices (E10 before and after rescaling).
inline std::vector<std::pair<Lattice, IntMatrix>> regression_cases(const std::string& data_dir, Budget& budget) {
  std::vector<std::pair<Lattice, IntMatrix>> out;
  IntPoly s1 = salem_candidate(1);
  io::UnitData ud = io::units_from_json(io::read_file(io::units_path(data_dir, s1)));
  PLattice l0 = principal_lattice(s1);
  Lattice a62 = rescale(lattice_A(6), 2);
  auto xs = isometries_with_charpoly(a62, cyclotomic(7), budget);
  for (const auto& u : ud.representatives) {
    PLattice t = twist(l0, u);
    if (t.lattice.signature().positive != 1 || !t.lattice.is_even() || abs(t.lattice.det()) != 1) continue;
    Lattice lp = rescale(t.lattice, 2);
    for (const auto& x : xs.classes) {
      GluingOptions o;
      o.domain = GluingOptions::Domain::Sylow;
      o.p = 2;
      for (const auto& m : enumerate_gluings(a62, x.representative, lp, t.f, o, budget).maps) {
        GluedLattice g = glue(a62, lp, m, x.representative, t.f);
        out.emplace_back(g.lattice, *g.f);
      }
    }
  }
  Tau8StageA a = tau8_stage_a(budget);
  out.emplace_back(a.glued.lattice, *a.glued.f);
  out.emplace_back(a.lplus, a.fplus);
  return out;
}

}  // namespace props
