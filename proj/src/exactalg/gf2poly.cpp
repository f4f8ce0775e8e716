#include "salemforge/exactalg/gf2poly.hpp"

#include <algorithm>

namespace salemforge {

Gf2Poly Gf2Poly::from_int_poly(const IntPoly& p) {
  if (p.degree() > 63) throw PreconditionError("degree too large for Gf2Poly");
  std::uint64_t b = 0;
  const auto& c = p.coefficients();
  for (std::size_t i = 0; i < c.size(); ++i)
    if (mpz_odd_p(c[i].get_mpz_t())) b |= (std::uint64_t{1} << i);
  return Gf2Poly(b);
}

Gf2Poly operator*(Gf2Poly a, Gf2Poly b) {
  if (a.degree() + b.degree() > 63) throw PreconditionError("Gf2Poly product exceeds degree 63");
  std::uint64_t r = 0;
  std::uint64_t x = a.bits_, y = b.bits_;
  for (int i = 0; y; ++i, y >>= 1)
    if (y & 1) r ^= x << i;
  return Gf2Poly(r);
}

std::string Gf2Poly::to_string() const {
  if (bits_ == 0) return "0";
  std::string s;
  for (int i = 0; i <= degree(); ++i) {
    if (!((bits_ >> i) & 1)) continue;
    if (!s.empty()) s += "+";
    if (i == 0)
      s += "1";
    else if (i == 1)
      s += "x";
    else
      s += "x^" + std::to_string(i);
  }
  return s;
}

std::pair<Gf2Poly, Gf2Poly> divmod(Gf2Poly a, Gf2Poly b) {
  if (b.is_zero()) throw PreconditionError("Gf2Poly division by zero");
  std::uint64_t q = 0, r = a.bits();
  int db = b.degree();
  while (r && Gf2Poly(r).degree() >= db) {
    int s = Gf2Poly(r).degree() - db;
    q |= std::uint64_t{1} << s;
    r ^= b.bits() << s;
  }
  return {Gf2Poly(q), Gf2Poly(r)};
}

Gf2Poly gcd(Gf2Poly a, Gf2Poly b) {
  while (!b.is_zero()) {
    Gf2Poly r = divmod(a, b).second;
    a = b;
    b = r;
  }
  return a;
}

Gf2Poly mulmod(Gf2Poly a, Gf2Poly b, Gf2Poly m) {
  // shift-and-add keeps everything below degree 2*deg(m) <= 63
  std::uint64_t r = 0;
  int dm = m.degree();
  std::uint64_t x = divmod(a, m).second.bits();
  std::uint64_t y = b.bits();
  std::uint64_t top = std::uint64_t{1} << dm;
  for (; y; y >>= 1) {
    if (y & 1) r ^= x;
    x <<= 1;
    if (x & top) x ^= m.bits();
  }
  return divmod(Gf2Poly(r), m).second;
}

Gf2Poly pow(Gf2Poly a, unsigned e) {
  Gf2Poly r = Gf2Poly::one();
  for (unsigned i = 0; i < e; ++i) r = r * a;
  return r;
}

bool is_irreducible(Gf2Poly f) {
  int d = f.degree();
  if (d <= 0) return false;
  if (d == 1) return true;
  Gf2Poly h = Gf2Poly::x();
  for (int i = 1; i <= d / 2; ++i) {
    h = mulmod(h, h, f);
    if (!gcd(h + Gf2Poly::x(), f).is_one()) return false;
  }
  return true;
}

const std::vector<Gf2Poly>& irreducibles_up_to(int max_degree) {
  static std::vector<Gf2Poly> cache;
  static int cached = 0;
  if (max_degree <= cached) return cache;
  if (max_degree > 31) throw PreconditionError("irreducible enumeration limited to degree 31");
  std::vector<Gf2Poly> out;
  for (int d = 1; d <= max_degree; ++d) {
    for (std::uint64_t b = std::uint64_t{1} << d; b < (std::uint64_t{2} << d); ++b) {
      Gf2Poly f(b);
      bool irred = true;
      for (Gf2Poly g : out) {
        if (2 * g.degree() > d) break;
        if (divmod(f, g).second.is_zero()) {
          irred = false;
          break;
        }
      }
      if (irred) out.push_back(f);
    }
  }
  cache = out;
  cached = max_degree;
  return cache;
}

std::vector<Gf2Factor> factor(Gf2Poly f) {
  if (f.is_zero()) throw PreconditionError("cannot factor zero");
  std::vector<Gf2Factor> out;
  int d = f.degree();
  const auto& irr = irreducibles_up_to(std::max(1, std::min(d, 16)));
  for (Gf2Poly g : irr) {
    if (f.degree() < 1) break;
    if (2 * g.degree() > f.degree()) {
      if (is_irreducible(f)) break;
    }
    int m = 0;
    for (;;) {
      auto [q, r] = divmod(f, g);
      if (!r.is_zero()) break;
      f = q;
      ++m;
    }
    if (m) out.push_back({g, m});
  }
  if (f.degree() >= 1) {
    if (!is_irreducible(f)) throw PreconditionError("factorization incomplete beyond enumerated degree");
    bool merged = false;
    for (auto& fa : out)
      if (fa.factor == f) {
        ++fa.multiplicity;
        merged = true;
      }
    if (!merged) out.push_back({f, 1});
  }
  std::sort(out.begin(), out.end(), [](const Gf2Factor& a, const Gf2Factor& b) { return a.factor < b.factor; });
  return out;
}

std::vector<Gf2Factor> mod2_factor(const IntPoly& p) {
  Gf2Poly f = Gf2Poly::from_int_poly(p);
  if (f.is_zero()) throw PreconditionError("polynomial vanishes mod 2");
  return factor(f);
}

std::string factorization_string(const std::vector<Gf2Factor>& fs) {
  if (fs.size() == 1 && fs[0].multiplicity == 1) return fs[0].factor.to_string();
  std::string s;
  for (const auto& f : fs) {
    s += "(" + f.factor.to_string() + ")";
    if (f.multiplicity > 1) s += "^" + std::to_string(f.multiplicity);
  }
  return s.empty() ? "1" : s;
}

}  // namespace salemforge
