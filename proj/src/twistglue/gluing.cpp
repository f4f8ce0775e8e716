#include "salemforge/twistglue/gluing.hpp"

#include <algorithm>
#include <numeric>

#include "salemforge/exactalg/linalg.hpp"
#include "salemforge/isom/isometry.hpp"

namespace salemforge {

namespace {

constexpr std::uint64_t kMaxGroup = 1u << 22;

// Precomputed element tables of a glue group.
struct Table {
  const GlueGroup* g = nullptr;
  std::uint64_t n = 0;
  std::vector<std::int64_t> q;      // q numerators (mod 2 den), or b(x,x) numerators for odd lattices
  std::vector<std::int64_t> order;  // element orders

  explicit Table(const GlueGroup& grp) : g(&grp), n(grp.size()) {
    if (n > kMaxGroup) throw PreconditionError("glue group too large to enumerate gluings");
    q.resize(n);
    order.resize(n);
    for (std::uint64_t i = 0; i < n; ++i) {
      GroupElement e = grp.group().element(i);
      q[i] = grp.even() ? grp.q_num(e) : grp.b_num(e, e);
      order[i] = grp.group().element_order(e);
    }
  }
  std::uint64_t idx(const GroupElement& e) const { return g->group().index(e); }
  GroupElement el(std::uint64_t i) const { return g->group().element(i); }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    return idx(g->group().add(el(a), el(b)));
  }
};

// q_1(x) + q_2(y) = 0 mod 2 (or b_1(x,x) + b_2(y,y) = 0 mod 1 for b-only checks).
bool anti(std::int64_t n1, std::int64_t d1, std::int64_t n2, std::int64_t d2, bool quadratic) {
  std::int64_t m = (quadratic ? 2 : 1) * d1 * d2;
  std::int64_t s = (static_cast<__int128>(n1) * d2 + static_cast<__int128>(n2) * d1) % m;
  return s == 0;
}

std::vector<std::uint64_t> closure(const Table& t, const std::vector<std::uint64_t>& gens) {
  std::vector<char> seen(t.n, 0);
  std::vector<std::uint64_t> out{0};
  seen[0] = 1;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::uint64_t g : gens) {
      std::uint64_t y = t.add(out[i], g);
      if (!seen[y]) {
        seen[y] = 1;
        out.push_back(y);
      }
    }
  return out;
}

std::vector<std::uint64_t> orbit(const Table& t, const IntMatrix& act, std::uint64_t x) {
  std::vector<std::uint64_t> o{x};
  for (;;) {
    std::uint64_t y = t.idx(t.g->apply(act, t.el(o.back())));
    if (y == x) return o;
    o.push_back(y);
  }
}

std::vector<std::uint64_t> subgroup_of(const Table& t, const std::vector<GroupElement>& gens) {
  std::vector<std::uint64_t> gi;
  for (const auto& e : gens) gi.push_back(t.idx(t.g->group().reduce(e)));
  return closure(t, gi);
}

std::vector<GroupElement> domain_generators(const GlueGroup& g, GluingOptions::Domain d, std::int64_t p,
                                            const std::vector<GroupElement>& explicit_gens) {
  std::vector<GroupElement> gens;
  switch (d) {
    case GluingOptions::Domain::Full:
      for (std::size_t i = 0; i < g.num_generators(); ++i) gens.push_back(g.unit(i));
      break;
    case GluingOptions::Domain::Sylow:
      gens = g.sylow_generators(p);
      break;
    case GluingOptions::Domain::Doubled:
      for (std::size_t i = 0; i < g.num_generators(); ++i) gens.push_back(g.group().scale(g.unit(i), 2));
      break;
    case GluingOptions::Domain::Explicit:
      gens = explicit_gens;
      break;
  }
  return gens;
}

struct Search {
  const Table& t1;
  const Table& t2;
  IntMatrix a1, a2;  // glue actions
  bool quadratic;
  std::int64_t d1, d2;
  std::vector<std::uint64_t> module_gens;            // in H1
  std::vector<std::vector<std::uint64_t>> orbits1;   // orbit of each module generator
  std::vector<std::vector<std::uint64_t>> cands;     // candidate images per module generator
  std::vector<std::uint64_t> chosen;
  std::vector<std::int64_t> img;
  std::vector<std::uint64_t> stamp2;
  std::uint64_t cur_stamp = 0;
  const GluingOptions& opt;
  const Lattice& l1;
  const Lattice& l2;
  const std::optional<IntMatrix>& f1;
  const std::optional<IntMatrix>& f2;
  Budget& budget;
  GluingEnumeration result;
  std::vector<GroupElement> h1_abelian;  // abelian generators of H1 used in the stored map

  // Build the map on the submodule generated by the first k module generators.
  bool build(std::size_t k, std::vector<std::uint64_t>* dom_out) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> gens;
    for (std::size_t i = 0; i < k; ++i) {
      const auto& o = orbits1[i];
      std::uint64_t y = chosen[i];
      for (std::uint64_t x : o) {
        gens.emplace_back(x, y);
        y = t2.idx(t2.g->apply(a2, t2.el(y)));
      }
      if (y != chosen[i]) return false;  // orbit lengths must match
    }
    ++cur_stamp;
    std::vector<std::uint64_t> dom{0};
    std::vector<std::uint64_t> touched{0};
    img[0] = 0;
    stamp2[0] = cur_stamp;
    bool ok = true;
    for (std::size_t i = 0; i < dom.size() && ok; ++i) {
      std::uint64_t x = dom[i];
      std::uint64_t z = static_cast<std::uint64_t>(img[x]);
      for (const auto& [g, h] : gens) {
        std::uint64_t x2 = t1.add(x, g);
        std::uint64_t z2 = t2.add(z, h);
        if (img[x2] >= 0) {
          if (static_cast<std::uint64_t>(img[x2]) != z2) {
            ok = false;
            break;
          }
          continue;
        }
        if (stamp2[z2] == cur_stamp || !anti(t1.q[x2], d1, t2.q[z2], d2, quadratic)) {
          ok = false;
          break;
        }
        img[x2] = static_cast<std::int64_t>(z2);
        stamp2[z2] = cur_stamp;
        dom.push_back(x2);
        touched.push_back(x2);
      }
    }
    if (ok && !quadratic) {
      // b on generator pairs
      for (std::size_t i = 0; i < gens.size() && ok; ++i)
        for (std::size_t j = 0; j < i && ok; ++j) {
          std::int64_t b1 = t1.g->b_num(t1.el(gens[i].first), t1.el(gens[j].first));
          std::int64_t b2 = t2.g->b_num(t2.el(gens[i].second), t2.el(gens[j].second));
          ok = anti(b1, d1, b2, d2, false);
        }
    }
    if (ok && dom_out) *dom_out = dom;
    for (std::uint64_t x : touched) img[x] = -1;
    return ok;
  }

  void recurse(std::size_t k) {
    if (result.maps.size() >= opt.max_results) {
      result.complete = false;
      return;
    }
    if (k == module_gens.size()) {
      GluingMap m;
      for (std::size_t i = 0; i < k; ++i) {
        std::uint64_t y = chosen[i];
        for (std::uint64_t x : orbits1[i]) {
          m.h1.push_back(t1.el(x));
          m.h2.push_back(t2.el(y));
          y = t2.idx(t2.g->apply(a2, t2.el(y)));
        }
      }
      std::vector<std::uint64_t> dom;
      build(k, &dom);
      m.order = dom.size();
      if (opt.accept) {
        GluedLattice gl = glue(l1, l2, m, f1, f2);
        if (!opt.accept(gl.lattice)) return;
      }
      result.maps.push_back(std::move(m));
      return;
    }
    for (std::uint64_t y : cands[k]) {
      budget.consume();
      ++result.candidates;
      chosen[k] = y;
      if (!build(k + 1, nullptr)) continue;
      recurse(k + 1);
      if (result.maps.size() >= opt.max_results) {
        result.complete = false;
        return;
      }
    }
  }
};

}  // namespace

GluingEnumeration enumerate_gluings(const Lattice& l1, const std::optional<IntMatrix>& f1, const Lattice& l2,
                                    const std::optional<IntMatrix>& f2, const GluingOptions& opt,
                                    Budget& budget) {
  if (!l1.is_nondegenerate() || !l2.is_nondegenerate()) throw PreconditionError("gluing needs nondegenerate lattices");
  if (f1.has_value() != f2.has_value()) throw PreconditionError("give isometries on both sides or neither");
  if (opt.quadratic && (!l1.is_even() || !l2.is_even()))
    throw PreconditionError("quadratic gluing needs even lattices");
  GlueGroup g1(l1), g2(l2);
  Table t1(g1), t2(g2);
  IntMatrix a1 = f1 ? g1.action_matrix(*f1) : IntMatrix::identity(g1.num_generators());
  IntMatrix a2 = f2 ? g2.action_matrix(*f2) : IntMatrix::identity(g2.num_generators());

  // Domain H1 and its stability.
  std::vector<std::uint64_t> h1 =
      subgroup_of(t1, domain_generators(g1, opt.domain, opt.p, opt.h1_generators));
  std::vector<char> in_h1(t1.n, 0);
  for (auto x : h1) in_h1[x] = 1;
  for (auto x : h1)
    if (!in_h1[t1.idx(g1.apply(a1, t1.el(x)))]) throw PreconditionError("gluing domain is not f1-stable");

  // Target elements.
  std::vector<char> in_t(t2.n, 1);
  if (opt.target != GluingOptions::Target::Any) {
    std::vector<GroupElement> tg;
    switch (opt.target) {
      case GluingOptions::Target::Sylow: tg = g2.sylow_generators(opt.p); break;
      case GluingOptions::Target::Doubled:
        for (std::size_t i = 0; i < g2.num_generators(); ++i) tg.push_back(g2.group().scale(g2.unit(i), 2));
        break;
      default: tg = opt.h2_generators; break;
    }
    std::fill(in_t.begin(), in_t.end(), 0);
    for (auto x : subgroup_of(t2, tg)) in_t[x] = 1;
  }

  Search s{t1, t2, a1, a2, opt.quadratic, g1.den(), g2.den(), {}, {}, {}, {}, std::vector<std::int64_t>(t1.n, -1),
           std::vector<std::uint64_t>(t2.n, 0), 0, opt, l1, l2, f1, f2, budget, {}, {}};

  // Greedy module generators: each step adds the element enlarging the submodule most.
  std::vector<char> covered(t1.n, 0);
  covered[0] = 1;
  std::vector<std::uint64_t> abel;
  std::size_t covered_count = 1;
  while (covered_count < h1.size()) {
    std::uint64_t best = 0;
    std::size_t best_size = 0;
    std::vector<std::uint64_t> best_sub;
    for (std::uint64_t x : h1) {
      if (covered[x]) continue;
      auto o = orbit(t1, a1, x);
      std::vector<std::uint64_t> gens = abel;
      gens.insert(gens.end(), o.begin(), o.end());
      auto sub = closure(t1, gens);
      if (sub.size() > best_size ||
          (sub.size() == best_size && t1.order[x] > t1.order[best])) {
        best = x;
        best_size = sub.size();
        best_sub = std::move(sub);
      }
      if (best_size == h1.size()) break;
    }
    auto o = orbit(t1, a1, best);
    abel.insert(abel.end(), o.begin(), o.end());
    s.module_gens.push_back(best);
    s.orbits1.push_back(o);
    for (auto x : best_sub) covered[x] = 1;
    covered_count = best_sub.size();
  }

  for (std::uint64_t m : s.module_gens) {
    std::vector<std::uint64_t> c;
    std::size_t olen = orbit(t1, a1, m).size();
    for (std::uint64_t y = 0; y < t2.n; ++y) {
      if (!in_t[y] || t2.order[y] != t1.order[m]) continue;
      if (!anti(t1.q[m], s.d1, t2.q[y], s.d2, opt.quadratic)) continue;
      if (orbit(t2, a2, y).size() != olen) continue;
      c.push_back(y);
    }
    s.cands.push_back(std::move(c));
  }
  s.chosen.assign(s.module_gens.size(), 0);
  s.recurse(0);
  return std::move(s.result);
}

GluingMap invert(const GluingMap& phi) { return GluingMap{phi.h2, phi.h1, phi.order}; }

RatMatrix overlattice_basis(std::size_t rank, const std::vector<RatVector>& extra) {
  Int den = 1;
  for (const auto& v : extra) den = lcm(den, common_denominator(v));
  IntMatrix gens(rank + extra.size(), rank);
  for (std::size_t i = 0; i < rank; ++i) gens(i, i) = den;
  for (std::size_t k = 0; k < extra.size(); ++k)
    for (std::size_t j = 0; j < rank; ++j) {
      Rat x = extra[k][j] * den;
      gens(rank + k, j) = x.get_num();
    }
  IntMatrix h = hermite_normal_form_mod(gens, den);
  if (h.rows() != rank) throw PreconditionError("overlattice generators have the wrong rank");
  RatMatrix b(rank, rank);
  for (std::size_t i = 0; i < rank; ++i)
    for (std::size_t j = 0; j < rank; ++j) b(i, j) = make_rat(h(i, j), den);
  return b;
}

IntMatrix transport_isometry(const IntMatrix& f, const RatMatrix& basis) {
  RatMatrix bt = basis.transpose();
  RatMatrix m = inverse(bt) * to_rat(f) * bt;
  if (!is_integral(m)) throw PreconditionError("isometry does not preserve the lattice");
  return to_int(m);
}

GluedLattice glue(const Lattice& l1, const Lattice& l2, const GluingMap& phi, const std::optional<IntMatrix>& f1,
                  const std::optional<IntMatrix>& f2) {
  if (phi.h1.size() != phi.h2.size()) throw PreconditionError("gluing map: generator count mismatch");
  std::size_t n1 = l1.rank(), n2 = l2.rank();
  GlueGroup g1(l1), g2(l2);
  std::vector<RatVector> extra;
  for (std::size_t k = 0; k < phi.h1.size(); ++k) {
    RatVector a = g1.lift(phi.h1[k]), b = g2.lift(phi.h2[k]);
    RatVector v(n1 + n2);
    for (std::size_t i = 0; i < n1; ++i) v[i] = a[i];
    for (std::size_t i = 0; i < n2; ++i) v[n1 + i] = b[i];
    extra.push_back(std::move(v));
  }
  GluedLattice out;
  out.basis = overlattice_basis(n1 + n2, extra);
  Lattice sum = direct_sum(l1, l2);
  out.lattice = rational_sublattice(sum, out.basis, "glued");
  Rat index = 1 / abs(determinant(out.basis));
  if (index != Rat(static_cast<long>(phi.order)) && phi.order != 0)
    throw PreconditionError("gluing map is not an isomorphism onto its image");
  if (Rat(l1.det() * l2.det()) != Rat(out.lattice.det()) * index * index)
    throw PreconditionError("glue determinant law violated");
  RatMatrix binv = inverse(out.basis);
  RatMatrix e1(n1, n1 + n2), e2(n2, n1 + n2);
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n1 + n2; ++j) e1(i, j) = binv(i, j);
  for (std::size_t i = 0; i < n2; ++i)
    for (std::size_t j = 0; j < n1 + n2; ++j) e2(i, j) = binv(n1 + i, j);
  out.embed1 = to_int(e1);
  out.embed2 = to_int(e2);
  if (f1 && f2) {
    IntMatrix f = transport_isometry(block_diagonal(*f1, *f2), out.basis);
    require_isometry(out.lattice, f);
    out.f = f;
  }
  return out;
}

}  // namespace salemforge
