// Independent reference computations used only by the tests.
#pragma once

#include <algorithm>
#include <cmath>
#include <set>
#include <functional>
#include <random>
#include <vector>

#include "salemforge/exactalg/linalg.hpp"
#include "salemforge/exactalg/poly.hpp"
#include "salemforge/lattice/enumerate.hpp"

namespace oracle {

using salemforge::Int;
using salemforge::IntMatrix;
using salemforge::IntPoly;
using salemforge::Rat;

// Laplace expansion; only for tiny matrices.
inline Int laplace_det(const IntMatrix& m) {
  std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Int s = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j) == 0) continue;
    IntMatrix sub(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t k = 0, c = 0; k < n; ++k)
        if (k != j) sub(i - 1, c++) = m(i, k);
    Int d = laplace_det(sub);
    s += ((j % 2) ? -1 : 1) * m(0, j) * d;
  }
  return s;
}

// gcd of all k x k minors.
inline Int minor_gcd(const IntMatrix& m, std::size_t k) {
  Int g = 0;
  std::vector<std::size_t> rows(k), cols(k);
  std::function<void(std::size_t, std::size_t)> pick_cols;
  std::function<void(std::size_t, std::size_t)> pick_rows = [&](std::size_t start, std::size_t depth) {
    if (depth == k) {
      pick_cols(0, 0);
      return;
    }
    for (std::size_t r = start; r < m.rows(); ++r) {
      rows[depth] = r;
      pick_rows(r + 1, depth + 1);
    }
  };
  pick_cols = [&](std::size_t start, std::size_t depth) {
    if (depth == k) {
      IntMatrix sub(k, k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) sub(i, j) = m(rows[i], cols[j]);
      g = salemforge::gcd(g, laplace_det(sub));
      return;
    }
    for (std::size_t c = start; c < m.cols(); ++c) {
      cols[depth] = c;
      pick_cols(c + 1, depth + 1);
    }
  };
  pick_rows(0, 0);
  return g;
}

inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long lo, long hi) {
  std::uniform_int_distribution<long> d(lo, hi);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

inline IntMatrix random_symmetric(std::mt19937_64& rng, std::size_t n, long lo, long hi) {
  std::uniform_int_distribution<long> d(lo, hi);
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = d(rng);
  return m;
}

// Random unimodular matrix as a product of elementary operations.
inline IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n, int steps) {
  IntMatrix u = IntMatrix::identity(n);
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<long> coef(-2, 2);
  for (int s = 0; s < steps; ++s) {
    std::size_t a = idx(rng), b = idx(rng);
    if (a == b) continue;
    long c = coef(rng);
    for (std::size_t j = 0; j < n; ++j) u(a, j) += c * u(b, j);
  }
  return u;
}

// Sylvester-matrix resultant.
inline Int sylvester_resultant(const IntPoly& p, const IntPoly& q) {
  int m = p.degree(), n = q.degree();
  IntMatrix s(m + n, m + n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) s(i, i + j) = p.coeff(m - j);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) s(n + i, i + j) = q.coeff(n - j);
  return salemforge::determinant(s);
}

inline Int det_at(const IntMatrix& m, long t) {
  IntMatrix a = -m;
  for (std::size_t i = 0; i < m.rows(); ++i) a(i, i) += t;
  return salemforge::determinant(a);
}

// min sum phi(k_i) over sets of divisors > 1 of n with lcm n.
inline unsigned lcm_dimension(unsigned n) {
  if (n == 1) return 0;
  std::vector<unsigned> divs;
  for (unsigned d = 2; d <= n; ++d)
    if (n % d == 0) divs.push_back(d);
  auto phi = [](unsigned k) {
    unsigned r = 0;
    for (unsigned i = 1; i <= k; ++i)
      if (std::__gcd(i, k) == 1) ++r;
    return r;
  };
  unsigned best = ~0u;
  for (unsigned mask = 1; mask < (1u << divs.size()); ++mask) {
    unsigned l = 1, s = 0;
    for (std::size_t i = 0; i < divs.size(); ++i)
      if ((mask >> i) & 1u) {
        l = l / std::__gcd(l, divs[i]) * divs[i];
        s += phi(divs[i]);
      }
    if (l == n) best = std::min(best, s);
  }
  return best;
}

// Box enumeration: |x_i| <= sqrt(bound (G^-1)_ii) (Cauchy-Schwarz) for positive definite G.
inline std::set<salemforge::SmallVector> box_vectors(const IntMatrix& g, std::int64_t bound) {
  std::size_t n = g.rows();
  salemforge::RatMatrix inv = salemforge::inverse(g);
  std::vector<std::int64_t> lim(n);
  for (std::size_t i = 0; i < n; ++i) {
    Int cap = salemforge::floor(inv(i, i) * bound);
    Int t = sqrt(cap);
    lim[i] = t.get_si();
  }
  std::vector<std::int64_t> gs(n * n);
  for (std::size_t i = 0; i < n * n; ++i) gs[i] = g(i / n, i % n).get_si();
  std::set<salemforge::SmallVector> out;
  salemforge::SmallVector x(n, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      std::int64_t q = 0;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) q += x[a] * gs[a * n + b] * x[b];
      if (q > 0 && q <= bound) {
        // canonical sign: last nonzero positive
        salemforge::SmallVector y = x;
        std::size_t k = n;
        while (k-- > 0 && y[k] == 0) {}
        if (y[k] < 0)
          for (auto& c : y) c = -c;
        out.insert(y);
      }
      return;
    }
    for (std::int64_t v = -lim[i]; v <= lim[i]; ++v) {
      x[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

}  // namespace oracle
