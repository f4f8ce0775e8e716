#include "salemforge/lattice/enumerate.hpp"

#include <cmath>
#include <functional>

namespace salemforge {

SmallVector to_small(const IntVector& v) {
  SmallVector s(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) s[i] = to_int64(v[i]);
  return s;
}

IntVector to_int(const SmallVector& v) {
  IntVector s(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) s[i] = static_cast<long>(v[i]);
  return s;
}

namespace {

Int round_div(const Int& a, const Int& b) {
  // nearest integer to a/b, b > 0
  Int q;
  Int twice = 2 * a + b;
  Int den = 2 * b;
  mpz_fdiv_q(q.get_mpz_t(), twice.get_mpz_t(), den.get_mpz_t());
  return q;
}

class IntegralLll {
 public:
  explicit IntegralLll(const IntMatrix& g) : n_(g.rows()), b_(g), h_(IntMatrix::identity(g.rows())) {
    d_.assign(n_ + 1, Int(0));
    lam_ = IntMatrix(n_, n_);
  }

  void run() {
    if (n_ <= 1) return;
    d_[0] = 1;
    d_[1] = b_(0, 0);
    if (d_[1] <= 0) throw PreconditionError("LLL needs a positive definite Gram matrix");
    std::size_t k = 2, kmax = 1;  // 1-based as in the integral algorithm
    while (k <= n_) {
      if (k > kmax) {
        kmax = k;
        for (std::size_t j = 1; j <= k; ++j) {
          Int u = b_(k - 1, j - 1);
          for (std::size_t i = 1; i < j; ++i) {
            Int t = d_[i] * u - lam(k, i) * lam(j, i);
            mpz_divexact(u.get_mpz_t(), t.get_mpz_t(), d_[i - 1].get_mpz_t());
          }
          if (j < k)
            lam(k, j) = u;
          else
            d_[k] = u;
        }
        if (d_[k] <= 0) throw PreconditionError("LLL needs a positive definite Gram matrix");
      }
      redi(k, k - 1);
      Int lhs = 4 * d_[k] * d_[k - 2];
      Int rhs = 3 * d_[k - 1] * d_[k - 1] - 4 * lam(k, k - 1) * lam(k, k - 1);
      if (lhs < rhs) {
        swapi(k, kmax);
        if (k > 2) --k;
      } else {
        for (std::size_t l = k - 1; l-- > 1;) redi(k, l);
        ++k;
      }
    }
  }

  const IntMatrix& gram() const { return b_; }
  const IntMatrix& transform() const { return h_; }

 private:
  Int& lam(std::size_t k, std::size_t j) { return lam_(k - 1, j - 1); }

  void redi(std::size_t k, std::size_t l) {
    Int twice = 2 * lam(k, l);
    if (abs(twice) <= d_[l]) return;
    Int q = round_div(lam(k, l), d_[l]);
    // basis vector k -= q * basis vector l
    for (std::size_t j = 0; j < n_; ++j) h_(k - 1, j) -= q * h_(l - 1, j);
    for (std::size_t j = 0; j < n_; ++j) b_(k - 1, j) -= q * b_(l - 1, j);
    for (std::size_t i = 0; i < n_; ++i) b_(i, k - 1) -= q * b_(i, l - 1);
    lam(k, l) -= q * d_[l];
    for (std::size_t i = 1; i < l; ++i) lam(k, i) -= q * lam(l, i);
  }

  void swapi(std::size_t k, std::size_t kmax) {
    h_.swap_rows(k - 1, k - 2);
    b_.swap_rows(k - 1, k - 2);
    b_.swap_cols(k - 1, k - 2);
    for (std::size_t j = 1; j + 2 <= k; ++j) std::swap(lam(k, j), lam(k - 1, j));
    Int l = lam(k, k - 1);
    Int bb = (d_[k - 2] * d_[k] + l * l);
    mpz_divexact(bb.get_mpz_t(), bb.get_mpz_t(), d_[k - 1].get_mpz_t());
    for (std::size_t i = k + 1; i <= kmax; ++i) {
      Int t = lam(i, k);
      Int a = d_[k] * lam(i, k - 1) - l * t;
      mpz_divexact(lam(i, k).get_mpz_t(), a.get_mpz_t(), d_[k - 1].get_mpz_t());
      Int c = bb * t + l * lam(i, k);
      mpz_divexact(lam(i, k - 1).get_mpz_t(), c.get_mpz_t(), d_[k].get_mpz_t());
    }
    d_[k - 1] = bb;
  }

  std::size_t n_;
  IntMatrix b_, h_, lam_;
  IntVector d_;
};

// Fincke-Pohst over a positive definite (reduced) Gram matrix; calls emit(x) for
// every x != 0 with Q(x) <= bound and last nonzero coordinate positive.
void fincke_pohst(const IntMatrix& q, std::int64_t bound, Budget& budget,
                  const std::function<void(const SmallVector&, std::int64_t)>& emit) {
  std::size_t n = q.rows();
  if (n == 0) return;
  // Q(x) = sum_i c[i][i] (x_i + sum_{j>i} c[i][j] x_j)^2
  std::vector<std::vector<long double>> c(n, std::vector<long double>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c[i][j] = q(i, j).get_d();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      c[j][i] = c[i][j];
      c[i][j] = c[i][j] / c[i][i];
    }
    for (std::size_t k = i + 1; k < n; ++k)
      for (std::size_t l = k; l < n; ++l) c[k][l] -= c[k][i] * c[i][l];
  }
  std::vector<std::vector<std::int64_t>> qi(n, std::vector<std::int64_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) qi[i][j] = to_int64(q(i, j));
  const long double slack = 1e-6L * (1 + bound);
  SmallVector x(n, 0);
  std::vector<long double> t(n + 1, 0), center(n, 0);
  t[n] = static_cast<long double>(bound) + slack;
  // last nonzero coordinate positive: recurse from the last index
  std::function<void(std::size_t, bool)> rec = [&](std::size_t i, bool all_zero_above) {
    budget.consume();
    long double ctr = 0;
    for (std::size_t j = i + 1; j < n; ++j) ctr -= c[i][j] * x[j];
    long double r = std::sqrt(std::max(0.0L, t[i + 1] / c[i][i])) + 1e-9L;
    std::int64_t lo = static_cast<std::int64_t>(std::ceil(ctr - r));
    std::int64_t hi = static_cast<std::int64_t>(std::floor(ctr + r));
    if (all_zero_above) lo = std::max<std::int64_t>(lo, 0);
    for (std::int64_t v = lo; v <= hi; ++v) {
      long double d = v - ctr;
      long double rem = t[i + 1] - c[i][i] * d * d;
      if (rem < -slack) continue;
      x[i] = v;
      t[i] = rem;
      if (i == 0) {
        if (all_zero_above && v == 0) continue;
        // exact verification
        __int128 s = 0;
        for (std::size_t a = 0; a < n; ++a) {
          if (!x[a]) continue;
          __int128 row = 0;
          for (std::size_t b = 0; b < n; ++b) row += static_cast<__int128>(qi[a][b]) * x[b];
          s += row * x[a];
        }
        if (s <= bound) emit(x, static_cast<std::int64_t>(s));
      } else {
        rec(i - 1, all_zero_above && v == 0);
      }
    }
    x[i] = 0;
  };
  rec(n - 1, true);
}

}  // namespace

LllResult lll_reduce(const IntMatrix& gram) {
  IntegralLll l(gram);
  l.run();
  return {l.gram(), l.transform()};
}

std::vector<ShortVector> short_vectors(const Lattice& l, std::int64_t bound, Budget& budget) {
  Signature s = l.signature();
  if (s.zero != 0 || (s.positive != 0 && s.negative != 0))
    throw PreconditionError("short_vectors needs a definite lattice");
  bool neg = s.negative > 0;
  IntMatrix g = neg ? IntMatrix(-l.gram()) : l.gram();
  LllResult red = lll_reduce(g);
  std::size_t n = l.rank();
  std::vector<std::vector<std::int64_t>> tr(n, std::vector<std::int64_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) tr[i][j] = to_int64(red.transform(i, j));
  std::vector<ShortVector> out;
  fincke_pohst(red.gram, bound, budget, [&](const SmallVector& y, std::int64_t norm) {
    SmallVector v(n, 0);
    for (std::size_t i = 0; i < n; ++i)
      if (y[i])
        for (std::size_t j = 0; j < n; ++j) v[j] = checked_add(v[j], checked_mul(y[i], tr[i][j]));
    out.push_back({v, neg ? -norm : norm});
  });
  return out;
}

std::vector<ShortVector> short_vectors(const Lattice& l, std::int64_t bound) {
  Budget b;
  return short_vectors(l, bound, b);
}

std::vector<SmallVector> roots(const Lattice& l, Budget& budget) {
  if (!l.is_negative_definite()) throw PreconditionError("roots() expects a negative definite lattice");
  std::vector<SmallVector> out;
  for (auto& sv : short_vectors(l, 2, budget))
    if (sv.norm == -2) out.push_back(sv.v);
  return out;
}

std::vector<SmallVector> roots(const Lattice& l) {
  Budget b;
  return roots(l, b);
}

std::vector<SmallVector> roots_in_hyperplane(const Lattice& l, const IntVector& h, Budget& budget) {
  if (l.norm(h) <= 0) throw PreconditionError("roots_in_hyperplane needs (h, h) > 0");
  std::size_t n = l.rank();
  IntVector gh = l.gram() * h;
  IntMatrix row(1, n);
  for (std::size_t i = 0; i < n; ++i) row(0, i) = gh[i];
  IntMatrix basis = integer_kernel(row);  // (n-1) x n
  Lattice perp = sublattice_gram(l, basis);
  if (!perp.is_negative_definite()) throw PreconditionError("h^perp is not negative definite");
  std::vector<SmallVector> out;
  for (auto& r : roots(perp, budget)) {
    SmallVector v(n, 0);
    for (std::size_t i = 0; i < basis.rows(); ++i)
      if (r[i])
        for (std::size_t j = 0; j < n; ++j) v[j] = checked_add(v[j], checked_mul(r[i], to_int64(basis(i, j))));
    out.push_back(std::move(v));
  }
  return out;
}

std::map<std::int64_t, std::uint64_t> theta_prefix(const Lattice& l, std::int64_t bound, Budget& budget) {
  std::map<std::int64_t, std::uint64_t> m;
  for (auto& sv : short_vectors(l, bound, budget)) m[sv.norm < 0 ? -sv.norm : sv.norm] += 2;
  return m;
}

}  // namespace salemforge
