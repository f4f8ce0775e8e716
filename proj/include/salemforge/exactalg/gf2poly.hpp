#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "salemforge/exactalg/poly.hpp"

namespace salemforge {

// Polynomial over F_2, bit i is the coefficient of x^i. Degree at most 63.
class Gf2Poly {
 public:
  constexpr Gf2Poly() = default;
  constexpr explicit Gf2Poly(std::uint64_t bits) : bits_(bits) {}
  static Gf2Poly from_int_poly(const IntPoly& p);
  static Gf2Poly x() { return Gf2Poly(2); }
  static Gf2Poly one() { return Gf2Poly(1); }

  std::uint64_t bits() const { return bits_; }
  int degree() const { return bits_ ? 63 - __builtin_clzll(bits_) : -1; }
  bool is_zero() const { return bits_ == 0; }
  bool is_one() const { return bits_ == 1; }

  friend bool operator==(Gf2Poly a, Gf2Poly b) { return a.bits_ == b.bits_; }
  friend bool operator!=(Gf2Poly a, Gf2Poly b) { return a.bits_ != b.bits_; }
  friend bool operator<(Gf2Poly a, Gf2Poly b) {
    return a.degree() != b.degree() ? a.degree() < b.degree() : a.bits_ < b.bits_;
  }
  friend Gf2Poly operator+(Gf2Poly a, Gf2Poly b) { return Gf2Poly(a.bits_ ^ b.bits_); }
  friend Gf2Poly operator*(Gf2Poly a, Gf2Poly b);

  // "1+x+x^3"
  std::string to_string() const;

 private:
  std::uint64_t bits_ = 0;
};

std::pair<Gf2Poly, Gf2Poly> divmod(Gf2Poly a, Gf2Poly b);
Gf2Poly gcd(Gf2Poly a, Gf2Poly b);
Gf2Poly mulmod(Gf2Poly a, Gf2Poly b, Gf2Poly m);
Gf2Poly pow(Gf2Poly a, unsigned e);

// Ben-Or test: gcd(x^(2^i) - x mod f, f) = 1 for i <= deg/2.
bool is_irreducible(Gf2Poly f);

// All irreducible polynomials of degree <= max_degree, by sieving.
const std::vector<Gf2Poly>& irreducibles_up_to(int max_degree);

struct Gf2Factor {
  Gf2Poly factor;
  int multiplicity;
};

// Factorization by trial division with enumerated irreducibles; factors sorted by degree then bits.
std::vector<Gf2Factor> factor(Gf2Poly f);
std::vector<Gf2Factor> mod2_factor(const IntPoly& p);

// "(1+x+x^2)^2(1+x+x^3)"
std::string factorization_string(const std::vector<Gf2Factor>& fs);

}  // namespace salemforge
