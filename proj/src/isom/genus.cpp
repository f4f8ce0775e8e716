#include "salemforge/isom/genus.hpp"

#include <map>

namespace salemforge {

namespace {

std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
  a %= p;
  if (a < 0) a += p;
  std::int64_t r = 1;
  for (std::int64_t e = p - 2, b = a; e; e >>= 1, b = b * b % p)
    if (e & 1) r = r * b % p;
  return r;
}

Lattice reduced(const Lattice& l) {
  bool neg = l.is_negative_definite();
  IntMatrix g = neg ? IntMatrix(-l.gram()) : l.gram();
  IntMatrix r = lll_reduce(g).gram;
  return Lattice(neg ? IntMatrix(-r) : r);
}

}  // namespace

Lattice kneser_neighbor(const Lattice& l, std::int64_t p, const IntVector& v0) {
  if (p < 3) throw PreconditionError("kneser_neighbor implemented for odd primes");
  if (!l.is_even()) throw PreconditionError("kneser_neighbor needs an even lattice");
  Int pp(static_cast<long>(p));
  if (mod(l.det(), pp) == 0) throw PreconditionError("p divides det L");
  std::size_t n = l.rank();
  IntVector v = v0;
  bool in_pl = true;
  for (auto& c : v) in_pl = in_pl && mod(c, pp) == 0;
  if (in_pl) throw PreconditionError("v lies in pL");
  if (mod(l.norm(v), pp) != 0) throw PreconditionError("(v, v) is not 0 mod p");
  IntVector gv = l.gram() * v;
  if (mod(l.norm(v), pp * pp) != 0) {
    std::size_t j = 0;
    while (j < n && mod(gv[j], pp) == 0) ++j;
    if (j == n) throw std::logic_error("v in pL^* despite p not dividing det");
    // (v + c p e_j)^2 = v^2 + 2 c p (v, e_j) mod p^2
    Int a = mod(l.norm(v) / pp, pp);
    Int inv = static_cast<long>(inv_mod(to_int64(mod(2 * gv[j], pp)), p));
    Int c = mod(-a * inv, pp);
    v[j] += c * pp;
    gv = l.gram() * v;
  }
  if (mod(l.norm(v), pp * pp) != 0) throw std::logic_error("neighbor adjustment failed");
  // L_v basis: e_i - (w_i / w_j) e_j for i != j, and p e_j, where w = G v mod p
  std::size_t j = 0;
  while (j < n && mod(gv[j], pp) == 0) ++j;
  Int wj_inv = static_cast<long>(inv_mod(to_int64(mod(gv[j], pp)), p));
  IntMatrix gens(n + 1, n);
  std::size_t r = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == j) continue;
    gens(r, i) = pp;
    gens(r, j) = -mod(gv[i] * wj_inv, pp) * pp;
    ++r;
  }
  gens(r, j) = pp * pp;
  ++r;
  for (std::size_t i = 0; i < n; ++i) gens(r, i) = v[i];  // p * (v / p)
  IntMatrix h = hermite_normal_form_mod(gens, pp * pp);   // rows: p * basis of N
  if (h.rows() != n) throw std::logic_error("neighbor basis has wrong rank");
  IntMatrix g = h * l.gram() * h.transpose();
  Int p2 = pp * pp;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (!mpz_divisible_p(g(a, b).get_mpz_t(), p2.get_mpz_t())) throw std::logic_error("neighbor is not integral");
      g(a, b) /= p2;
    }
  Lattice nb(g);
  if (!nb.is_even() || nb.det() != l.det()) throw std::logic_error("neighbor left the genus");
  return reduced(nb);
}

std::vector<std::int64_t> lattice_fingerprint(const Lattice& l, Budget& budget) {
  std::vector<std::int64_t> f;
  // the bound must not depend on the basis
  IntMatrix g = l.is_negative_definite() ? IntMatrix(-l.gram()) : l.gram();
  for (auto [norm, count] : theta_prefix(Lattice(g), 6, budget)) {
    f.push_back(norm);
    f.push_back(static_cast<std::int64_t>(count));
  }
  return f;
}

GenusResult genus_explore(const Lattice& seed, std::int64_t p, std::size_t max_classes, Budget& budget) {
  if (!(seed.is_negative_definite() || seed.is_positive_definite()))
    throw PreconditionError("genus_explore needs a definite lattice");
  GenusResult res;
  std::vector<std::vector<std::int64_t>> fps;
  auto known = [&](const Lattice& l, const std::vector<std::int64_t>& fp) {
    for (std::size_t i = 0; i < res.classes.size(); ++i) {
      if (fps[i] != fp) continue;
      if (find_isometry(l, res.classes[i], budget)) return true;
    }
    return false;
  };
  Lattice s = reduced(seed);
  res.classes.push_back(s);
  fps.push_back(lattice_fingerprint(s, budget));
  res.aut_orders.push_back(automorphism_group(s, budget).order());
  std::size_t n = seed.rank();
  Int pp(static_cast<long>(p));
  for (std::size_t head = 0; head < res.classes.size(); ++head) {
    Lattice cur = res.classes[head];
    // projective points of F_p^n, first nonzero coordinate 1
    SmallVector x(n, 0);
    for (std::size_t lead = 0; lead < n; ++lead) {
      std::uint64_t tails = 1;
      for (std::size_t k = lead + 1; k < n; ++k) tails *= static_cast<std::uint64_t>(p);
      for (std::uint64_t t = 0; t < tails; ++t) {
        std::fill(x.begin(), x.end(), 0);
        x[lead] = 1;
        std::uint64_t u = t;
        for (std::size_t k = lead + 1; k < n; ++k) {
          x[k] = static_cast<std::int64_t>(u % p);
          u /= p;
        }
        IntVector v = to_int(x);
        if (mod(cur.norm(v), pp) != 0) continue;
        budget.consume();
        Lattice nb = kneser_neighbor(cur, p, v);
        ++res.neighbors_built;
        auto fp = lattice_fingerprint(nb, budget);
        if (known(nb, fp)) continue;
        if (res.classes.size() >= max_classes) return res;
        res.classes.push_back(nb);
        fps.push_back(fp);
        res.aut_orders.push_back(automorphism_group(nb, budget).order());
      }
    }
  }
  res.complete = true;
  return res;
}

}  // namespace salemforge
