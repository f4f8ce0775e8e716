#include "salemforge/isom/isometry.hpp"

#include "salemforge/lattice/glue.hpp"

namespace salemforge {

bool is_isometry(const Lattice& l, const IntMatrix& f) {
  if (f.rows() != l.rank() || f.cols() != l.rank()) return false;
  return f.transpose() * l.gram() * f == l.gram();
}

void require_isometry(const Lattice& l, const IntMatrix& f) {
  if (!is_isometry(l, f)) throw PreconditionError("matrix is not an isometry of the lattice");
}

std::optional<std::uint64_t> matrix_order(const IntMatrix& f, std::uint64_t max_order) {
  IntMatrix id = IntMatrix::identity(f.rows());
  IntMatrix p = f;
  for (std::uint64_t k = 1; k <= max_order; ++k) {
    if (p == id) return k;
    p = p * f;
  }
  return std::nullopt;
}

Sublattice kernel_sublattice(const Lattice& l, const IntMatrix& f, const IntPoly& c) {
  IntMatrix cf = eval_matrix(c, f);
  return Sublattice(l, integer_kernel(cf));
}

std::uint64_t glue_action_order(const Lattice& l, const IntMatrix& f) {
  GlueGroup g(l);
  if (g.num_generators() == 0) return 1;
  IntMatrix a = g.action_matrix(f);
  std::vector<GroupElement> cur;
  for (std::size_t i = 0; i < g.num_generators(); ++i) cur.push_back(g.unit(i));
  for (std::uint64_t k = 1; k <= 1000000; ++k) {
    for (auto& x : cur) x = g.apply(a, x);
    bool id = true;
    for (std::size_t i = 0; i < cur.size() && id; ++i) id = (cur[i] == g.unit(i));
    if (id) return k;
  }
  throw std::logic_error("glue action order exceeds 10^6");
}

IntPoly minimal_polynomial(const IntMatrix& f) {
  std::size_t n = f.rows();
  // smallest d with f^d in the span of I, f, ..., f^(d-1), as flattened vectors
  std::vector<IntMatrix> pw{IntMatrix::identity(n)};
  for (std::size_t d = 1; d <= n; ++d) {
    pw.push_back(pw.back() * f);
    RatMatrix a(n * n, d);
    RatVector b(n * n);
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t i = 0; i < n * n; ++i) a(i, k) = pw[k].data()[i];
    for (std::size_t i = 0; i < n * n; ++i) b[i] = pw[d].data()[i];
    auto sol = solve(a, b);
    if (!sol) continue;
    std::vector<Rat> c(d + 1);
    for (std::size_t k = 0; k < d; ++k) c[k] = -(*sol)[k];
    c[d] = 1;
    return primitive_part(RatPoly(c));
  }
  throw std::logic_error("minimal polynomial degree exceeds dimension");
}

IntMatrix companion_matrix(const IntPoly& p) {
  if (!p.is_monic()) throw PreconditionError("companion matrix needs a monic polynomial");
  std::size_t d = static_cast<std::size_t>(p.degree());
  IntMatrix m(d, d);
  for (std::size_t j = 0; j + 1 < d; ++j) m(j + 1, j) = 1;
  for (std::size_t i = 0; i < d; ++i) m(i, d - 1) = -p.coeff(i);
  return m;
}

}  // namespace salemforge
