#include "salemforge/isom/charpoly_search.hpp"

#include <unordered_set>

namespace salemforge {

CharpolySearchResult isometries_with_charpoly(const Lattice& l, const IntPoly& p, Budget& budget,
                                              std::uint64_t max_group_order) {
  if (p.degree() != static_cast<int>(l.rank()) || !p.is_monic())
    throw PreconditionError("characteristic polynomial must be monic of degree rank(L)");
  AutomorphismGroup g = automorphism_group(l, budget);
  return isometries_with_charpoly(g, p, budget, max_group_order);
}

CharpolySearchResult isometries_with_charpoly(const AutomorphismGroup& g, const IntPoly& p, Budget& budget,
                                              std::uint64_t max_group_order) {
  CharpolySearchResult res;
  res.group_order = g.order();
  if (res.group_order > Int(static_cast<unsigned long>(max_group_order))) return res;
  std::size_t n = g.dimension();
  std::int64_t want_trace = p.degree() >= 1 ? -to_int64(p.coeff(n - 1)) : 0;
  std::unordered_set<SmallMatrix, SmallMatrixHash> hits;
  g.for_each_element(
      [&](const SmallMatrix& m) {
        if (m.trace() != want_trace) return true;
        if (char_poly(m.to_int()) == p) hits.insert(m);
        return true;
      },
      budget);
  std::vector<SmallMatrix> gens = g.generators(), invs;
  for (auto& x : gens) invs.push_back(unimodular_inverse(x));
  std::unordered_set<SmallMatrix, SmallMatrixHash> done;
  std::vector<SmallMatrix> ordered(hits.begin(), hits.end());
  std::sort(ordered.begin(), ordered.end(), [](const SmallMatrix& a, const SmallMatrix& b) { return a.a < b.a; });
  for (const auto& m : ordered) {
    if (done.count(m)) continue;
    std::vector<SmallMatrix> cls{m};
    done.insert(m);
    for (std::size_t h = 0; h < cls.size(); ++h)
      for (std::size_t k = 0; k < gens.size(); ++k) {
        SmallMatrix c = gens[k] * cls[h] * invs[k];
        if (done.insert(c).second) cls.push_back(c);
      }
    res.classes.push_back({m.to_int(), cls.size()});
  }
  res.complete = true;
  return res;
}

}  // namespace salemforge
