#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "salemforge/exactalg/matrix.hpp"
#include "salemforge/lattice/enumerate.hpp"

namespace salemforge {

// Square int64 matrix for group element arithmetic; products are overflow checked.
struct SmallMatrix {
  std::size_t n = 0;
  std::vector<std::int64_t> a;

  SmallMatrix() = default;
  explicit SmallMatrix(std::size_t dim) : n(dim), a(dim * dim, 0) {}
  static SmallMatrix identity(std::size_t dim);
  static SmallMatrix from(const IntMatrix& m);
  IntMatrix to_int() const;

  std::int64_t& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }

  SmallVector apply(const SmallVector& v) const;
  std::int64_t trace() const;
  bool is_identity() const;

  friend bool operator==(const SmallMatrix& x, const SmallMatrix& y) { return x.a == y.a; }
  friend SmallMatrix operator*(const SmallMatrix& x, const SmallMatrix& y);
};

// Inverse of an integral matrix with determinant +-1.
SmallMatrix unimodular_inverse(const SmallMatrix& m);

struct SmallMatrixHash {
  std::size_t operator()(const SmallMatrix& m) const;
};
struct SmallVectorHash {
  std::size_t operator()(const SmallVector& v) const;
};

}  // namespace salemforge
