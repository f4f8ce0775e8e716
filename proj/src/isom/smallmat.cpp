#include "salemforge/isom/smallmat.hpp"

#include "salemforge/exactalg/linalg.hpp"

namespace salemforge {

SmallMatrix SmallMatrix::identity(std::size_t dim) {
  SmallMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1;
  return m;
}

SmallMatrix SmallMatrix::from(const IntMatrix& m) {
  if (!m.is_square()) throw PreconditionError("SmallMatrix must be square");
  SmallMatrix s(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) s(i, j) = to_int64(m(i, j));
  return s;
}

IntMatrix SmallMatrix::to_int() const {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = static_cast<long>((*this)(i, j));
  return m;
}

SmallVector SmallMatrix::apply(const SmallVector& v) const {
  SmallVector r(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    __int128 s = 0;
    for (std::size_t j = 0; j < n; ++j) s += static_cast<__int128>((*this)(i, j)) * v[j];
    if (s > INT64_MAX || s < INT64_MIN) throw OverflowError("SmallMatrix::apply overflow");
    r[i] = static_cast<std::int64_t>(s);
  }
  return r;
}

std::int64_t SmallMatrix::trace() const {
  std::int64_t t = 0;
  for (std::size_t i = 0; i < n; ++i) t = checked_add(t, (*this)(i, i));
  return t;
}

bool SmallMatrix::is_identity() const {
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

SmallMatrix operator*(const SmallMatrix& x, const SmallMatrix& y) {
  std::size_t n = x.n;
  SmallMatrix r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      std::int64_t xik = x(i, k);
      if (!xik) continue;
      for (std::size_t j = 0; j < n; ++j) {
        std::int64_t t;
        if (__builtin_mul_overflow(xik, y(k, j), &t) || __builtin_add_overflow(r(i, j), t, &r(i, j)))
          throw OverflowError("SmallMatrix product overflow");
      }
    }
  return r;
}

SmallMatrix unimodular_inverse(const SmallMatrix& m) {
  RatMatrix inv = inverse(m.to_int());
  return SmallMatrix::from(salemforge::to_int(inv));
}

std::size_t SmallMatrixHash::operator()(const SmallMatrix& m) const {
  std::size_t h = 1469598103934665603ull;
  for (auto x : m.a) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
  return h;
}

std::size_t SmallVectorHash::operator()(const SmallVector& v) const {
  std::size_t h = 1469598103934665603ull;
  for (auto x : v) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
  return h;
}

}  // namespace salemforge
