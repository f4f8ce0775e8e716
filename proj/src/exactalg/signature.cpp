#include "salemforge/exactalg/signature.hpp"

#include "salemforge/exactalg/linalg.hpp"

namespace salemforge {

Signature signature(const RatMatrix& g0) {
  if (!g0.is_symmetric()) throw PreconditionError("signature needs a symmetric matrix");
  RatMatrix g = g0;
  std::size_t n = g.rows();
  Signature s;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && g(p, p) == 0) ++p;
    if (p == n) {
      // no nonzero diagonal: make one from an off-diagonal entry
      std::size_t a = n, b = n;
      for (std::size_t i = k; i < n && a == n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (g(i, j) != 0) {
            a = i;
            b = j;
            break;
          }
      if (a == n) {
        s.zero += static_cast<int>(n - k);
        return s;
      }
      // e_a <- e_a + e_b gives diagonal 2 g(a,b)
      for (std::size_t j = 0; j < n; ++j) g(a, j) += g(b, j);
      for (std::size_t i = 0; i < n; ++i) g(i, a) += g(i, b);
      p = a;
    }
    g.swap_rows(k, p);
    g.swap_cols(k, p);
    const Rat piv = g(k, k);
    (piv > 0 ? s.positive : s.negative)++;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (g(i, k) == 0) continue;
      Rat f = g(i, k) / piv;
      for (std::size_t j = k; j < n; ++j) g(i, j) -= f * g(k, j);
      for (std::size_t j = k; j < n; ++j) g(j, i) = g(i, j);
    }
  }
  return s;
}

Signature signature(const IntMatrix& g) { return signature(to_rat(g)); }

}  // namespace salemforge
