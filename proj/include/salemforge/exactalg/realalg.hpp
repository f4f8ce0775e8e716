#pragma once

#include <optional>
#include <vector>

#include "salemforge/exactalg/poly.hpp"

namespace salemforge {

class SturmSequence {
 public:
  // p must be squarefree and nonzero.
  explicit SturmSequence(const IntPoly& p);
  int sign_changes(const Rat& x) const;
  // Number of distinct real roots in (a, b].
  int count_roots(const Rat& a, const Rat& b) const;
  int count_all_real_roots() const;

 private:
  std::vector<RatPoly> seq_;
};

Rat cauchy_bound(const IntPoly& p);
int sign(const Rat& x);

struct RatInterval {
  Rat lo;
  Rat hi;
  Rat width() const { return hi - lo; }
};

// Disjoint isolating intervals (lo, hi] of the real roots of a squarefree p, ascending.
std::vector<RatInterval> isolate_real_roots(const IntPoly& p);

// A real root of an integer polynomial, held as (p, isolating interval (lo, hi]).
class RealAlgebraic {
 public:
  RealAlgebraic(IntPoly p, RatInterval iv);
  const IntPoly& poly() const { return p_; }
  const RatInterval& interval() const { return iv_; }
  // Bisects until width <= w.
  void refine(const Rat& w);
  double approx() const;
  long double approx_ld() const;

 private:
  IntPoly p_;
  RatInterval iv_;
};

// Interval image of p over [lo, hi], exact rational interval arithmetic.
RatInterval eval_interval(const RatPoly& p, const RatInterval& x);

// Q(tau) = Q[t]/(m) with m irreducible monic, together with a real embedding tau.
class RealNumberField {
 public:
  RealNumberField(IntPoly minpoly, RealAlgebraic embedding);
  const IntPoly& modulus() const { return m_; }
  int degree() const { return m_.degree(); }
  RealAlgebraic& embedding() { return tau_; }
  const RealAlgebraic& embedding() const { return tau_; }

  RatPoly reduce(const RatPoly& a) const;
  RatPoly mul(const RatPoly& a, const RatPoly& b) const;
  RatPoly inv(const RatPoly& a) const;  // throws on zero
  RatPoly gen() const { return RatPoly::x(); }
  // Exact sign of a(tau): zero test by reduction mod m, otherwise interval refinement.
  int sign_of(const RatPoly& a);
  long double approx(const RatPoly& a) const;

 private:
  IntPoly m_;
  RatPoly mq_;
  RealAlgebraic tau_;
};

}  // namespace salemforge
