#pragma once

#include <optional>
#include <string>

#include "salemforge/exactalg/linalg.hpp"
#include "salemforge/exactalg/signature.hpp"

namespace salemforge {

// Integral lattice given by a symmetric Gram matrix in a fixed basis.
class Lattice {
 public:
  Lattice() = default;
  explicit Lattice(IntMatrix gram, std::string label = "");

  const IntMatrix& gram() const { return gram_; }
  std::size_t rank() const { return gram_.rows(); }
  const std::string& label() const { return label_; }
  void set_label(std::string s) { label_ = std::move(s); }

  Int det() const { return determinant(gram_); }
  bool is_even() const;
  bool is_nondegenerate() const { return det() != 0; }
  Signature signature() const { return salemforge::signature(gram_); }
  bool is_positive_definite() const;
  bool is_negative_definite() const;

  Int inner(const IntVector& x, const IntVector& y) const { return bilinear(gram_, x, y); }
  Rat inner(const RatVector& x, const RatVector& y) const;
  Int norm(const IntVector& x) const { return inner(x, x); }

  friend bool operator==(const Lattice& a, const Lattice& b) { return a.gram_ == b.gram_; }

 private:
  IntMatrix gram_;
  std::string label_;
};

Lattice direct_sum(const Lattice& a, const Lattice& b);
Lattice direct_sum(const std::vector<Lattice>& parts);
// Gram of the sublattice spanned by the rows of basis.
Lattice sublattice_gram(const Lattice& l, const IntMatrix& basis, std::string label = "");
// Lattice with Gram B G B^T for a rational basis (rows); must come out integral.
Lattice rational_sublattice(const Lattice& l, const RatMatrix& basis, std::string label = "");

// L(a): Gram scaled by a. For a = 1/p, requires G(L)_p = F_p^n and, for p = 2, b(x,x) = 0 on G(L)_2.
Lattice rescale(const Lattice& l, const Rat& a);

// ADE lattices are negative definite.
Lattice lattice_U(long n = 1);
Lattice lattice_A(int k);
Lattice lattice_D(int l);
Lattice lattice_E(int n);  // 6, 7, 8
Lattice lattice_E10();     // U + E8
Lattice lattice_I(int r, int s);
Lattice lattice_II(int r, int s);
Lattice lattice_diag(const std::vector<long>& d);
// "E8", "A6(2)", "U+U(2)", "II_{3,19}", "I_{2,2}(4)", "E10(2)", "D4+A2" ...
Lattice lattice_from_name(const std::string& name);

struct UnimodularClass {
  std::string name;  // "II_{r,s}" or "E8"
  int r = 0, s = 0;
};
// Even unimodular lattices: indefinite ones by signature; definite rank 8 as E8(+-1).
std::optional<UnimodularClass> classify_even_unimodular(const Lattice& l);

}  // namespace salemforge
