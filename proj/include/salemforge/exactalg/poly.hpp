#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "salemforge/exactalg/matrix.hpp"

namespace salemforge {

// Dense univariate polynomial, coefficients lowest degree first.
template <class T>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<T> c) : c_(std::move(c)) { trim(); }
  Poly(std::initializer_list<long> c) {
    for (long x : c) c_.emplace_back(x);
    trim();
  }
  static Poly constant(const T& a) { return Poly(std::vector<T>{a}); }
  static Poly monomial(const T& a, unsigned d) {
    std::vector<T> c(d + 1, T(0));
    c[d] = a;
    return Poly(std::move(c));
  }
  static Poly x() { return monomial(T(1), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  T coeff(std::size_t i) const { return i < c_.size() ? c_[i] : T(0); }
  const std::vector<T>& coefficients() const { return c_; }
  const T& leading() const { return c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  bool is_reciprocal() const {
    if (c_.empty()) return false;
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (c_[i] != c_[c_.size() - 1 - i]) return false;
    return true;
  }

  Poly derivative() const {
    std::vector<T> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(T(static_cast<long>(i)) * c_[i]);
    return Poly(std::move(d));
  }

  template <class V>
  V eval(const V& x) const {
    V r = 0;
    for (std::size_t i = c_.size(); i-- > 0;) r = r * x + V(c_[i]);
    return r;
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return a.c_ != b.c_; }
  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<T> c(std::max(a.c_.size(), b.c_.size()), T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return Poly(std::move(c));
  }
  friend Poly operator-(const Poly& a) {
    std::vector<T> c(a.c_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = -a.c_[i];
    return Poly(std::move(c));
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<T> c(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(c));
  }
  friend Poly operator*(const T& s, const Poly& a) {
    std::vector<T> c(a.c_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = s * a.c_[i];
    return Poly(std::move(c));
  }

  // "1 - x^2 - 2x^3", lowest degree first
  std::string to_string(char var = 'x') const;

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<T> c_;
};

template <>
std::string Poly<Int>::to_string(char var) const;
template <>
std::string Poly<Rat>::to_string(char var) const;

using IntPoly = Poly<Int>;
using RatPoly = Poly<Rat>;

IntPoly pow(const IntPoly& p, unsigned e);
RatPoly to_rat(const IntPoly& p);
// Scales by the common denominator and removes content; leading coefficient made positive.
IntPoly primitive_part(const RatPoly& p);
Int content(const IntPoly& p);

// Division over Q.
std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b);
RatPoly gcd(const RatPoly& a, const RatPoly& b);  // monic
// Division by a divisor with leading coefficient +-1; exact over Z.
std::pair<IntPoly, IntPoly> divmod_unit(const IntPoly& a, const IntPoly& b);
bool divides(const IntPoly& d, const IntPoly& a);
// Throws PreconditionError if not exact.
IntPoly exact_div(const IntPoly& a, const IntPoly& d);

IntPoly compose(const IntPoly& p, const IntPoly& q);  // p(q(x))

// Resultant by the Euclidean recurrence over Q.
Int resultant(const IntPoly& p, const IntPoly& q);

IntPoly cyclotomic(unsigned k);

// Characteristic polynomial det(xI - M), division-free (Berkowitz).
IntPoly char_poly(const IntMatrix& m);
// p(M)
IntMatrix eval_matrix(const IntPoly& p, const IntMatrix& m);

// Parses "1 - x^2 - 2x^3" style strings (any order of terms, variable x or y).
IntPoly parse_poly(const std::string& s);

}  // namespace salemforge
