#include "salemforge/exactalg/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace salemforge {

RatMatrix to_rat(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
  return r;
}

bool is_integral(const RatMatrix& m) {
  for (const Rat& x : m.data())
    if (x.get_den() != 1) return false;
  return true;
}

IntMatrix to_int(const RatMatrix& m) {
  IntMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).get_den() != 1) throw PreconditionError("matrix entry is not an integer");
      r(i, j) = m(i, j).get_num();
    }
  return r;
}

IntMatrix block_diagonal(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
  return m;
}

IntMatrix power(const IntMatrix& m, unsigned e) {
  IntMatrix r = IntMatrix::identity(m.rows());
  IntMatrix b = m;
  while (e) {
    if (e & 1u) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

std::string to_string(const IntMatrix& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s += i ? ", [" : "[";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) s += ", ";
      s += m(i, j).get_str();
    }
    s += "]";
  }
  return s + "]";
}

Int determinant(const IntMatrix& m0) {
  if (!m0.is_square()) throw PreconditionError("determinant of non-square matrix");
  std::size_t n = m0.rows();
  if (n == 0) return 1;
  IntMatrix m = m0;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    prev = m(k, k);
  }
  Int d = m(n - 1, n - 1);
  return sign > 0 ? d : Int(-d);
}

Rat determinant(const RatMatrix& m0) {
  if (!m0.is_square()) throw PreconditionError("determinant of non-square matrix");
  RatMatrix m = m0;
  std::size_t n = m.rows();
  Rat d = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m(p, k) == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      m.swap_rows(p, k);
      d = -d;
    }
    d *= m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m(i, k) == 0) continue;
      Rat f = m(i, k) / m(k, k);
      for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return d;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RatMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(p, r);
    Rat inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rat f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t rank(const RatMatrix& m0) {
  RatMatrix m = m0;
  return rref(m).size();
}

RatMatrix inverse(const RatMatrix& m0) {
  if (!m0.is_square()) throw PreconditionError("inverse of non-square matrix");
  std::size_t n = m0.rows();
  RatMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m0(i, j);
    aug(i, n + i) = 1;
  }
  auto piv = rref(aug);
  if (piv.size() < n || piv[n - 1] != n - 1) throw PreconditionError("matrix is singular");
  return aug.block(0, n, n, n);
}

std::optional<RatVector> solve(const RatMatrix& a, const RatVector& b) {
  std::size_t n = a.cols();
  RatMatrix aug(a.rows(), n + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = b[i];
  }
  auto piv = rref(aug);
  if (!piv.empty() && piv.back() == n) return std::nullopt;
  RatVector x(n, Rat(0));
  for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug(r, n);
  return x;
}

RatMatrix rational_kernel(const RatMatrix& a) {
  RatMatrix m = a;
  auto piv = rref(m);
  std::size_t n = a.cols();
  std::vector<bool> is_piv(n, false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<std::vector<Rat>> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_piv[f]) continue;
    std::vector<Rat> v(n, Rat(0));
    v[f] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m(r, f);
    basis.push_back(std::move(v));
  }
  RatMatrix k(basis.size(), n);
  for (std::size_t i = 0; i < basis.size(); ++i) k.set_row(i, basis[i]);
  return k;
}

namespace {

void row_combine(IntMatrix& m, std::size_t target, std::size_t src, const Int& q) {
  // row[target] -= q * row[src]
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (m(src, j) != 0) m(target, j) -= q * m(src, j);
}

void col_combine(IntMatrix& m, std::size_t target, std::size_t src, const Int& q) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (m(i, src) != 0) m(i, target) -= q * m(i, src);
}

void row_negate(IntMatrix& m, std::size_t r) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

}  // namespace

namespace {

bool is_diagonal(const IntMatrix& a) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j && a(i, j) != 0) return false;
  return true;
}

// W with W * a == h, for a nonsingular; W is integral when h spans the same row lattice.
IntMatrix row_transform(const IntMatrix& h, const IntMatrix& a) {
  RatMatrix w = to_rat(h) * inverse(a);
  IntMatrix out(w.rows(), w.cols());
  for (std::size_t i = 0; i < w.rows(); ++i)
    for (std::size_t j = 0; j < w.cols(); ++j) {
      if (w(i, j).get_den() != 1) throw std::logic_error("Hermite transform is not integral");
      out(i, j) = w(i, j).get_num();
    }
  return out;
}

// Square nonsingular case: alternate row and column Hermite forms modulo |det|, so entries stay bounded.
SmithForm smith_nonsingular(const IntMatrix& m) {
  std::size_t n = m.rows();
  Int d = abs(determinant(m));
  SmithForm sf{m, IntMatrix::identity(n), IntMatrix::identity(n)};
  IntMatrix& A = sf.S;
  while (!is_diagonal(A)) {
    IntMatrix h = hermite_normal_form_mod(A, d);
    sf.U = row_transform(h, A) * sf.U;
    A = h;
    if (is_diagonal(A)) break;
    IntMatrix at = A.transpose();
    IntMatrix k = hermite_normal_form_mod(at, d);
    sf.V = sf.V * row_transform(k, at).transpose();
    A = k.transpose();
  }
  // divisibility chain via 2x2 gcd/lcm steps
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Int a = A(i, i), b = A(j, j);
      if (mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t())) continue;
      Int g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      Int ag = a / g, bg = b / g;
      for (std::size_t c = 0; c < n; ++c) {
        Int ui = sf.U(i, c), uj = sf.U(j, c);
        sf.U(i, c) = s * ui + t * uj;
        sf.U(j, c) = -bg * ui + ag * uj;
        Int vi = sf.V(c, i), vj = sf.V(c, j);
        sf.V(c, i) = vi + vj;
        sf.V(c, j) = -t * bg * vi + s * ag * vj;
      }
      A(i, i) = g;
      A(j, j) = a * bg;
    }
  for (std::size_t i = 0; i < n; ++i)
    if (A(i, i) < 0) {
      row_negate(A, i);
      row_negate(sf.U, i);
    }
  return sf;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  if (m.rows() == m.cols() && m.rows() > 0 && determinant(m) != 0) return smith_nonsingular(m);
  std::size_t R = m.rows(), C = m.cols();
  SmithForm sf{m, IntMatrix::identity(R), IntMatrix::identity(C)};
  IntMatrix& A = sf.S;
  std::size_t t = 0;
  while (t < R && t < C) {
    // pivot: smallest nonzero absolute value in the remaining block
    std::size_t pi = R, pj = C;
    for (std::size_t i = t; i < R; ++i)
      for (std::size_t j = t; j < C; ++j)
        if (A(i, j) != 0 && (pi == R || abs(A(i, j)) < abs(A(pi, pj)))) {
          pi = i;
          pj = j;
        }
    if (pi == R) break;
    A.swap_rows(t, pi);
    sf.U.swap_rows(t, pi);
    A.swap_cols(t, pj);
    sf.V.swap_cols(t, pj);
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < R; ++i) {
        if (A(i, t) == 0) continue;
        Int q = floor_div(A(i, t), A(t, t));
        row_combine(A, i, t, q);
        row_combine(sf.U, i, t, q);
        if (A(i, t) != 0) {
          clean = false;
          if (abs(A(i, t)) < abs(A(t, t))) {
            A.swap_rows(t, i);
            sf.U.swap_rows(t, i);
          }
        }
      }
      for (std::size_t j = t + 1; j < C; ++j) {
        if (A(t, j) == 0) continue;
        Int q = floor_div(A(t, j), A(t, t));
        col_combine(A, j, t, q);
        col_combine(sf.V, j, t, q);
        if (A(t, j) != 0) {
          clean = false;
          if (abs(A(t, j)) < abs(A(t, t))) {
            A.swap_cols(t, j);
            sf.V.swap_cols(t, j);
          }
        }
      }
      if (!clean) continue;
      // divisibility: pivot must divide every remaining entry
      bool fixed = false;
      for (std::size_t i = t + 1; i < R && !fixed; ++i)
        for (std::size_t j = t + 1; j < C; ++j)
          if (!mpz_divisible_p(A(i, j).get_mpz_t(), A(t, t).get_mpz_t())) {
            // add row i to row t, then re-reduce
            row_combine(A, t, i, Int(-1));
            row_combine(sf.U, t, i, Int(-1));
            fixed = true;
            break;
          }
      if (!fixed) break;
    }
    if (A(t, t) < 0) {
      row_negate(A, t);
      row_negate(sf.U, t);
    }
    ++t;
  }
  return sf;
}

IntVector elementary_divisors(const IntMatrix& m) {
  SmithForm sf = smith_normal_form(m);
  std::size_t k = std::min(m.rows(), m.cols());
  IntVector d(k);
  for (std::size_t i = 0; i < k; ++i) d[i] = sf.S(i, i);
  return d;
}

IntMatrix hermite_normal_form(const IntMatrix& m) {
  IntMatrix A = m;
  std::size_t R = A.rows(), C = A.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < C && r < R; ++c) {
    // Euclid down column c among rows r..R-1
    for (;;) {
      std::size_t p = R;
      for (std::size_t i = r; i < R; ++i)
        if (A(i, c) != 0 && (p == R || abs(A(i, c)) < abs(A(p, c)))) p = i;
      if (p == R) break;
      A.swap_rows(r, p);
      bool done = true;
      for (std::size_t i = r + 1; i < R; ++i) {
        if (A(i, c) == 0) continue;
        Int q = floor_div(A(i, c), A(r, c));
        row_combine(A, i, r, q);
        if (A(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (A(r, c) == 0) continue;
    if (A(r, c) < 0) row_negate(A, r);
    for (std::size_t i = 0; i < r; ++i) {
      Int q = floor_div(A(i, c), A(r, c));
      if (q != 0) row_combine(A, i, r, q);
    }
    ++r;
  }
  return A.block(0, 0, r, C);
}

IntMatrix hermite_normal_form_mod(const IntMatrix& m, const Int& d) {
  if (d <= 0) throw PreconditionError("modular Hermite form needs d > 0");
  std::size_t n = m.cols();
  std::vector<IntVector> pool;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    IntVector r(n);
    bool nz = false;
    for (std::size_t j = 0; j < n; ++j) nz |= (r[j] = mod(m(i, j), d)) != 0;
    if (nz) pool.push_back(std::move(r));
  }
  IntMatrix h(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    IntVector extra(n, Int(0));
    extra[k] = d;
    pool.push_back(std::move(extra));
    for (;;) {
      std::size_t p = pool.size();
      for (std::size_t i = 0; i < pool.size(); ++i)
        if (pool[i][k] != 0 && (p == pool.size() || abs(pool[i][k]) < abs(pool[p][k]))) p = i;
      bool done = true;
      for (std::size_t i = 0; i < pool.size(); ++i) {
        if (i == p || pool[i][k] == 0) continue;
        Int q = floor_div(pool[i][k], pool[p][k]);
        for (std::size_t j = k; j < n; ++j) pool[i][j] -= q * pool[p][j];
        for (std::size_t j = k + 1; j < n; ++j) pool[i][j] = mod(pool[i][j], d);
        if (pool[i][k] != 0) done = false;
      }
      if (!done) continue;
      IntVector piv = std::move(pool[p]);
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(p));
      if (piv[k] < 0)
        for (auto& x : piv) x = -x;
      for (std::size_t j = k + 1; j < n; ++j) piv[j] = mod(piv[j], d);
      for (std::size_t j = 0; j < n; ++j) h(k, j) = piv[j];
      break;
    }
    std::erase_if(pool, [](const IntVector& r) {
      for (const auto& x : r)
        if (x != 0) return false;
      return true;
    });
  }
  for (std::size_t k = 1; k < n; ++k)
    for (std::size_t i = 0; i < k; ++i) {
      Int q = floor_div(h(i, k), h(k, k));
      if (q != 0) row_combine(h, i, k, q);
    }
  return h;
}

IntMatrix integer_kernel(const IntMatrix& a) {
  // Rational kernel rows carry 1 at their free column and 0 at the other free columns, so an
  // integral kernel vector is fixed by its free coordinates y with y * K integral. Those y form
  // a lattice containing D Z^k (D the common denominator), kept in Hermite form modulo D.
  RatMatrix k = rational_kernel(to_rat(a));
  std::size_t nk = k.rows(), n = a.cols();
  if (nk == 0) return IntMatrix(0, n);
  Int d = 1;
  for (std::size_t i = 0; i < nk; ++i)
    for (std::size_t j = 0; j < n; ++j) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), k(i, j).get_den_mpz_t());
  IntMatrix y = IntMatrix::identity(nk);
  if (d != 1) {
    for (std::size_t c = 0; c < n; ++c) {
      IntVector m(nk);
      bool nz = false;
      for (std::size_t i = 0; i < nk; ++i) {
        Rat s = k(i, c) * d;
        m[i] = s.get_num();
        nz |= mod(m[i], d) != 0;
      }
      if (!nz) continue;
      // restrict to {y : y . m = 0 mod d} by a Euclid pass on the residues
      IntVector t(nk);
      for (std::size_t i = 0; i < nk; ++i) {
        Int v = 0;
        for (std::size_t j = 0; j < nk; ++j) v += y(i, j) * m[j];
        t[i] = mod(v, d);
      }
      for (;;) {
        std::size_t p = nk;
        for (std::size_t i = 0; i < nk; ++i)
          if (t[i] != 0 && (p == nk || t[i] < t[p])) p = i;
        if (p == nk) break;
        bool single = true;
        for (std::size_t i = 0; i < nk; ++i) {
          if (i == p || t[i] == 0) continue;
          Int q = t[i] / t[p];
          row_combine(y, i, p, q);
          t[i] -= q * t[p];
          if (t[i] != 0) single = false;
        }
        if (single) {
          Int g = gcd(t[p], d);
          for (std::size_t j = 0; j < nk; ++j) y(p, j) *= d / g;
          t[p] = 0;
          break;
        }
      }
      y = hermite_normal_form_mod(y, d);
    }
  }
  IntMatrix out(nk, n);
  for (std::size_t r = 0; r < nk; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      Rat s = 0;
      for (std::size_t i = 0; i < nk; ++i)
        if (y(r, i) != 0) s += Rat(y(r, i)) * k(i, c);
      if (s.get_den() != 1) throw std::logic_error("integer_kernel: non-integral combination");
      out(r, c) = s.get_num();
    }
  return hermite_normal_form(out);
}

IntMatrix saturate(const IntMatrix& b) {
  if (b.rows() == 0) return b;
  // the saturation is the kernel of the kernel
  IntMatrix k = integer_kernel(b);
  if (k.rows() == 0) return IntMatrix::identity(b.cols());
  return integer_kernel(k);
}

std::optional<IntVector> express_in_basis(const IntMatrix& b, const IntVector& target) {
  // solve c * B = target over Q, check integrality
  RatMatrix bt = to_rat(b.transpose());
  auto sol = solve(bt, to_rat(target));
  if (!sol) return std::nullopt;
  IntVector c(sol->size());
  for (std::size_t i = 0; i < sol->size(); ++i) {
    if ((*sol)[i].get_den() != 1) return std::nullopt;
    c[i] = (*sol)[i].get_num();
  }
  // rows of b may be dependent; verify
  IntVector chk(b.cols(), Int(0));
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) chk[j] += c[i] * b(i, j);
  if (chk != target) return std::nullopt;
  return c;
}

}  // namespace salemforge
