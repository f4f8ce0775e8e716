#include "salemforge/isom/autgroup.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>

#include "salemforge/lattice/glue.hpp"

namespace salemforge {

namespace {

// Short-vector data of a definite lattice, in original coordinates, both signs.
struct Space {
  std::size_t n = 0;
  SmallMatrix p;                   // positive definite Gram
  std::vector<SmallVector> base;   // reduced basis vectors
  SmallMatrix base_inv;            // inverse of the matrix with columns base
  std::vector<std::int64_t> base_gram;
  std::vector<SmallVector> s;      // vectors of norm <= cutoff
  std::vector<SmallVector> ps;     // P v
  std::vector<std::int64_t> norm;
  std::vector<int> profile;
  std::vector<int> base_index;     // index of base[i] in s
  std::unordered_map<SmallVector, int, SmallVectorHash> index;

  std::int64_t ip(int a, const SmallVector& w) const {
    std::int64_t r = 0;
    for (std::size_t k = 0; k < n; ++k) r += ps[a][k] * w[k];
    return r;
  }
  int find(const SmallVector& v) const {
    auto it = index.find(v);
    return it == index.end() ? -1 : it->second;
  }
};

using ProfileDict = std::map<std::vector<std::int64_t>, int>;

Space make_space(const Lattice& l, std::int64_t cutoff_override, Budget& budget) {
  Signature sig = l.signature();
  if (sig.zero || (sig.positive && sig.negative)) throw PreconditionError("automorphism search needs a definite lattice");
  IntMatrix g = sig.negative ? IntMatrix(-l.gram()) : l.gram();
  Space sp;
  sp.n = l.rank();
  sp.p = SmallMatrix::from(g);
  LllResult red = lll_reduce(g);
  std::int64_t cutoff = 0;
  SmallMatrix bcols(sp.n);
  for (std::size_t i = 0; i < sp.n; ++i) {
    SmallVector b(sp.n);
    for (std::size_t j = 0; j < sp.n; ++j) b[j] = to_int64(red.transform(i, j));
    for (std::size_t j = 0; j < sp.n; ++j) bcols(j, i) = b[j];
    sp.base.push_back(b);
    cutoff = std::max(cutoff, to_int64(red.gram(i, i)));
  }
  if (cutoff_override > 0) cutoff = cutoff_override;
  sp.base_inv = unimodular_inverse(bcols);
  sp.base_gram.resize(sp.n * sp.n);
  for (std::size_t i = 0; i < sp.n; ++i)
    for (std::size_t j = 0; j < sp.n; ++j) sp.base_gram[i * sp.n + j] = to_int64(red.gram(i, j));
  Lattice pos(g);
  for (auto& sv : short_vectors(pos, cutoff, budget)) {
    for (int sgn : {1, -1}) {
      SmallVector v = sv.v;
      if (sgn < 0)
        for (auto& c : v) c = -c;
      sp.index.emplace(v, static_cast<int>(sp.s.size()));
      sp.ps.push_back(sp.p.apply(v));
      sp.norm.push_back(sv.norm);
      sp.s.push_back(std::move(v));
    }
  }
  for (auto& b : sp.base) {
    int k = sp.find(b);
    // a target space built with a borrowed cutoff need not contain its own base
    if (k < 0 && cutoff_override == 0) throw std::logic_error("base vector missing from short vector list");
    sp.base_index.push_back(k);
  }
  return sp;
}

void compute_profiles(Space& sp, ProfileDict& dict, Budget& budget) {
  std::size_t m = sp.s.size();
  sp.profile.assign(m, 0);
  for (std::size_t a = 0; a < m; ++a) {
    budget.consume(m / 64 + 1);
    std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> hist;
    for (std::size_t b = 0; b < m; ++b) hist[{sp.norm[b], sp.ip(static_cast<int>(a), sp.s[b])}]++;
    std::vector<std::int64_t> key{sp.norm[a]};
    for (auto& [k, c] : hist) {
      key.push_back(k.first);
      key.push_back(k.second);
      key.push_back(c);
    }
    auto it = dict.emplace(std::move(key), static_cast<int>(dict.size())).first;
    sp.profile[a] = it->second;
  }
}

// Backtracking for images of the base of `from` inside `to`.
class Matcher {
 public:
  Matcher(const Space& from, const Space& to, Budget& budget) : a_(from), b_(to), budget_(budget) {
    cands_.resize(a_.n);
    for (std::size_t i = 0; i < a_.n; ++i) {
      int bi = a_.base_index[i];
      for (std::size_t c = 0; c < b_.s.size(); ++c)
        if (b_.norm[c] == a_.norm[bi] && b_.profile[c] == a_.profile[bi]) cands_[i].push_back(static_cast<int>(c));
    }
  }

  // Finds one completion of the fixed prefix img[0..k-1].
  bool complete(std::vector<int>& img, std::size_t k) {
    if (k == a_.n) return true;
    for (int c : cands_[k]) {
      budget_.consume();
      bool ok = true;
      for (std::size_t j = 0; j < k && ok; ++j) ok = b_.ip(c, b_.s[img[j]]) == a_.base_gram[k * a_.n + j];
      if (!ok) continue;
      img[k] = c;
      if (complete(img, k + 1)) return true;
    }
    return false;
  }

  bool consistent(const std::vector<int>& img, std::size_t k, int c) const {
    if (b_.norm[c] != a_.norm[a_.base_index[k]] || b_.profile[c] != a_.profile[a_.base_index[k]]) return false;
    for (std::size_t j = 0; j < k; ++j)
      if (b_.ip(c, b_.s[img[j]]) != a_.base_gram[k * a_.n + j]) return false;
    return true;
  }

  SmallMatrix matrix(const std::vector<int>& img) const {
    SmallMatrix v(a_.n);
    for (std::size_t j = 0; j < a_.n; ++j)
      for (std::size_t i = 0; i < a_.n; ++i) v(i, j) = b_.s[img[j]][i];
    return v * a_.base_inv;
  }

  const std::vector<int>& candidates(std::size_t k) const { return cands_[k]; }

 private:
  const Space& a_;
  const Space& b_;
  Budget& budget_;
  std::vector<std::vector<int>> cands_;
};

std::vector<int> permutation_of(const Space& sp, const SmallMatrix& g) {
  std::vector<int> perm(sp.s.size());
  for (std::size_t i = 0; i < sp.s.size(); ++i) {
    int j = sp.find(g.apply(sp.s[i]));
    if (j < 0) throw std::logic_error("automorphism does not preserve the short vector set");
    perm[i] = j;
  }
  return perm;
}

}  // namespace

Int AutomorphismGroup::order() const {
  Int o = 1;
  for (auto l : orbit_len_) o *= static_cast<unsigned long>(l);
  return o;
}

void AutomorphismGroup::for_each_element(const std::function<bool(const SmallMatrix&)>& visit, Budget& budget) const {
  std::function<bool(std::size_t, const SmallMatrix&)> rec = [&](std::size_t level, const SmallMatrix& acc) {
    if (level == transversals_.size()) {
      budget.consume();
      return visit(acc);
    }
    for (const auto& t : transversals_[level])
      if (!rec(level + 1, acc * t)) return false;
    return true;
  };
  rec(0, SmallMatrix::identity(n_));
}

AutomorphismGroup automorphism_group(const Lattice& l, Budget& budget) {
  ProfileDict dict;
  Space sp = make_space(l, 0, budget);
  compute_profiles(sp, dict, budget);
  Matcher matcher(sp, sp, budget);
  std::size_t n = sp.n;
  AutomorphismGroup grp;
  grp.n_ = n;
  std::vector<std::vector<int>> perms;
  grp.orbit_len_.assign(n, 1);

  auto fixes_prefix = [&](std::size_t g, std::size_t i) {
    for (std::size_t j = 0; j < i; ++j)
      if (perms[g][sp.base_index[j]] != sp.base_index[j]) return false;
    return true;
  };
  auto orbit = [&](std::size_t i) {
    std::vector<int> pts{sp.base_index[i]};
    std::vector<char> in(sp.s.size(), 0);
    in[sp.base_index[i]] = 1;
    std::vector<std::size_t> gs;
    for (std::size_t g = 0; g < perms.size(); ++g)
      if (fixes_prefix(g, i)) gs.push_back(g);
    for (std::size_t h = 0; h < pts.size(); ++h)
      for (auto g : gs) {
        int y = perms[g][pts[h]];
        if (!in[y]) {
          in[y] = 1;
          pts.push_back(y);
        }
      }
    return std::make_pair(pts, in);
  };

  for (std::size_t i = n; i-- > 0;) {
    auto [pts, in] = orbit(i);
    std::vector<char> excluded(sp.s.size(), 0);
    std::vector<int> prefix(n);
    for (std::size_t j = 0; j < i; ++j) prefix[j] = sp.base_index[j];
    for (int c : matcher.candidates(i)) {
      if (in[c] || excluded[c]) continue;
      if (!matcher.consistent(prefix, i, c)) continue;
      std::vector<int> img = prefix;
      img[i] = c;
      if (matcher.complete(img, i + 1)) {
        SmallMatrix m = matcher.matrix(img);
        grp.gens_.push_back(m);
        perms.push_back(permutation_of(sp, m));
        std::tie(pts, in) = orbit(i);
      } else {
        // the whole orbit of c under the current stabilizer is unreachable
        std::vector<int> stack{c};
        excluded[c] = 1;
        while (!stack.empty()) {
          int x = stack.back();
          stack.pop_back();
          for (std::size_t g = 0; g < perms.size(); ++g) {
            if (!fixes_prefix(g, i)) continue;
            int y = perms[g][x];
            if (!excluded[y]) {
              excluded[y] = 1;
              stack.push_back(y);
            }
          }
        }
      }
    }
    grp.orbit_len_[i] = pts.size();
  }

  // transversals from Schreier trees
  grp.transversals_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> gs;
    for (std::size_t g = 0; g < perms.size(); ++g)
      if (fixes_prefix(g, i)) gs.push_back(g);
    std::unordered_map<int, SmallMatrix> rep;
    rep.emplace(sp.base_index[i], SmallMatrix::identity(n));
    std::vector<int> pts{sp.base_index[i]};
    for (std::size_t h = 0; h < pts.size(); ++h)
      for (auto g : gs) {
        int y = perms[g][pts[h]];
        if (!rep.count(y)) {
          rep.emplace(y, grp.gens_[g] * rep.at(pts[h]));
          pts.push_back(y);
        }
      }
    if (pts.size() != grp.orbit_len_[i]) throw std::logic_error("orbit size mismatch in transversal");
    for (int p : pts) grp.transversals_[i].push_back(rep.at(p));
  }
  return grp;
}

AutomorphismGroup automorphism_group(const Lattice& l) {
  Budget b;
  return automorphism_group(l, b);
}

std::optional<IntMatrix> find_isometry(const Lattice& from, const Lattice& to, Budget& budget) {
  if (from.rank() != to.rank() || from.det() != to.det()) return std::nullopt;
  Signature sa = from.signature(), sb = to.signature();
  if (!(sa == sb)) return std::nullopt;
  if (from.rank() == 0) return IntMatrix(0, 0);
  ProfileDict dict;
  Space a = make_space(from, 0, budget);
  std::int64_t cutoff = 0;
  for (std::size_t i = 0; i < a.n; ++i) cutoff = std::max(cutoff, a.base_gram[i * a.n + i]);
  Space b = make_space(to, cutoff, budget);
  if (a.s.size() != b.s.size()) return std::nullopt;
  compute_profiles(a, dict, budget);
  compute_profiles(b, dict, budget);
  std::vector<int> pa = a.profile, pb = b.profile;
  std::sort(pa.begin(), pa.end());
  std::sort(pb.begin(), pb.end());
  if (pa != pb) return std::nullopt;
  Matcher m(a, b, budget);
  std::vector<int> img(a.n);
  if (!m.complete(img, 0)) return std::nullopt;
  IntMatrix res = m.matrix(img).to_int();
  if (res.transpose() * to.gram() * res != from.gram()) throw std::logic_error("isometry verification failed");
  return res;
}

std::optional<IntMatrix> find_isometry_box(const Lattice& from, const Lattice& to, int box, Budget& budget) {
  std::size_t n = from.rank();
  if (n != to.rank()) return std::nullopt;
  // candidate vectors of `to` by norm
  std::map<Int, std::vector<IntVector>> by_norm;
  std::set<Int> wanted;
  for (std::size_t i = 0; i < n; ++i) wanted.insert(from.gram()(i, i));
  IntVector x(n, Int(0));
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      Int q = to.norm(x);
      if (wanted.count(q)) by_norm[q].push_back(x);
      budget.consume();
      return;
    }
    for (int v = -box; v <= box; ++v) {
      x[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  std::vector<IntVector> img(n);
  std::function<bool(std::size_t)> bt = [&](std::size_t k) {
    if (k == n) {
      IntMatrix m(n, n);
      for (std::size_t j = 0; j < n; ++j) m.set_column(j, img[j]);
      return abs(determinant(m)) == 1;
    }
    for (const auto& c : by_norm[from.gram()(k, k)]) {
      budget.consume();
      bool ok = true;
      for (std::size_t j = 0; j < k && ok; ++j) ok = to.inner(c, img[j]) == from.gram()(k, j);
      if (!ok) continue;
      img[k] = c;
      if (bt(k + 1)) return true;
    }
    return false;
  };
  if (!bt(0)) return std::nullopt;
  IntMatrix m(n, n);
  for (std::size_t j = 0; j < n; ++j) m.set_column(j, img[j]);
  return m;
}

Tri isometric(const Lattice& a, const Lattice& b, Budget& budget, int box) {
  if (a.rank() != b.rank() || a.det() != b.det() || !(a.signature() == b.signature()) || a.is_even() != b.is_even())
    return Tri::No;
  if (a.rank() == 0) return Tri::Yes;
  if (GlueGroup(a).invariants() != GlueGroup(b).invariants()) return Tri::No;
  Signature s = a.signature();
  if (s.positive == 0 || s.negative == 0) return find_isometry(a, b, budget) ? Tri::Yes : Tri::No;
  return find_isometry_box(a, b, box, budget) ? Tri::Yes : Tri::Unknown;
}

}  // namespace salemforge
