#include "salemforge/twistglue/units.hpp"

#include <algorithm>
#include <cstdio>

#include "salemforge/core/errors.hpp"

namespace salemforge {

namespace {

std::int64_t mod_eval(const IntPoly& a, std::uint64_t p, std::int64_t r) {
  Int acc = 0;
  for (std::size_t i = a.coefficients().size(); i-- > 0;) acc = mod(acc * r + a.coefficients()[i], Int(static_cast<long>(p)));
  return acc.get_si();
}

std::int64_t pow_mod(std::int64_t b, std::uint64_t e, std::int64_t m) {
  __int128 r = 1, x = b % m;
  if (x < 0) x += m;
  while (e) {
    if (e & 1) r = r * x % m;
    x = x * x % m;
    e >>= 1;
  }
  return static_cast<std::int64_t>(r);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// F_2 row reduction; returns true if v is independent of rows (and adds it).
bool add_independent(std::vector<std::vector<int>>& rows, std::vector<int>& pivots, std::vector<int> v) {
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (v[pivots[i]]) for (std::size_t j = 0; j < v.size(); ++j) v[j] ^= rows[i][j];
  for (std::size_t j = 0; j < v.size(); ++j)
    if (v[j]) {
      rows.push_back(v);
      pivots.push_back(static_cast<int>(j));
      return true;
    }
  return false;
}

}  // namespace

IntPoly reduce_mod(const IntPoly& a, const IntPoly& r) { return divmod_unit(a, r).second; }

int quadratic_character(const IntPoly& a, std::uint64_t p, std::int64_t r) {
  std::int64_t v = mod_eval(a, p, r);
  if (v == 0) return 0;
  return pow_mod(v, (p - 1) / 2, static_cast<std::int64_t>(p)) == 1 ? 1 : -1;
}

UnitSquareClasses unit_square_classes(const IntPoly& r, int bound) {
  if (!r.is_monic()) throw PreconditionError("unit search needs a monic polynomial");
  int d = r.degree();
  UnitSquareClasses out;
  out.trace_poly = r;
  // characters at simple roots mod small odd primes
  for (std::uint64_t p = 3; out.characters.size() < static_cast<std::size_t>(8 * d + 16); ++p) {
    if (!is_prime(p)) continue;
    IntPoly dr = r.derivative();
    for (std::int64_t x = 0; x < static_cast<std::int64_t>(p); ++x)
      if (mod_eval(r, p, x) == 0 && mod_eval(dr, p, x) != 0) out.characters.emplace_back(p, x);
  }
  auto signature_of = [&](const IntPoly& a) {
    std::vector<int> v;
    for (auto [p, x] : out.characters) v.push_back(quadratic_character(a, p, x) < 0 ? 1 : 0);
    return v;
  };
  auto height = [](const IntPoly& a) {
    Int m = 0;
    for (const auto& c : a.coefficients()) m = std::max(m, Int(abs(c)));
    return m;
  };
  auto remember = [&](const IntPoly& a, const std::vector<int>& sig) {
    auto [it, fresh] = out.small.emplace(sig, a);
    if (!fresh && height(a) < height(it->second)) it->second = a;
  };
  std::vector<std::vector<int>> rows;
  std::vector<int> pivots;
  IntPoly minus_one = IntPoly::constant(Int(-1));
  std::vector<int> sig_m1 = signature_of(minus_one);
  if (add_independent(rows, pivots, sig_m1)) out.basis.push_back(minus_one);
  remember(minus_one, sig_m1);
  remember(IntPoly::constant(Int(1)), signature_of(IntPoly::constant(Int(1))));
  std::vector<long> c(static_cast<std::size_t>(d), -bound);
  for (;;) {
    IntPoly a(std::vector<Int>(c.begin(), c.end()));
    if (a.degree() >= 1) {
      Int n = resultant(r, a);
      if (abs(n) == 1) {
        std::vector<int> sig = signature_of(a);
        remember(a, sig);
        if (out.basis.size() < static_cast<std::size_t>(d) && add_independent(rows, pivots, sig)) out.basis.push_back(a);
      }
    }
    std::size_t i = 0;
    while (i < c.size() && c[i] == bound) c[i++] = -bound;
    if (i == c.size()) break;
    ++c[i];
  }
  out.complete = out.basis.size() == static_cast<std::size_t>(d);
  return out;
}

IntPoly unit_class(const UnitSquareClasses& u, std::uint64_t mask) {
  IntPoly a = IntPoly::constant(Int(1));
  for (std::size_t i = 0; i < u.basis.size(); ++i)
    if (mask >> i & 1) a = reduce_mod(a * u.basis[i], u.trace_poly);
  std::vector<int> sig;
  for (auto [p, x] : u.characters) sig.push_back(quadratic_character(a, p, x) < 0 ? 1 : 0);
  auto it = u.small.find(sig);
  return it == u.small.end() ? a : it->second;
}

std::string polynomial_hash(const IntPoly& p) {
  std::uint64_t h = 1469598103934665603ull;
  for (char ch : p.to_string()) {
    h ^= static_cast<unsigned char>(ch);
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace salemforge
