#include "salemforge/exactalg/salem.hpp"

#include <algorithm>
#include <bitset>
#include <cmath>
#include <complex>

namespace salemforge {

IntPoly trace_polynomial(const IntPoly& p) {
  if (p.is_zero() || p.degree() % 2 != 0 || !p.is_reciprocal())
    throw PreconditionError("trace polynomial needs a reciprocal polynomial of even degree");
  int m = p.degree() / 2;
  // T_i(y) = x^i + x^-i
  std::vector<IntPoly> t{IntPoly{2}, IntPoly{0, 1}};
  for (int i = 2; i <= m; ++i) t.push_back(IntPoly{0, 1} * t[i - 1] - t[i - 2]);
  IntPoly r = IntPoly::constant(p.coeff(m));
  for (int i = 1; i <= m; ++i) r = r + IntPoly::constant(p.coeff(m + i)) * t[i];
  return r;
}

namespace {

using u64 = std::uint64_t;
using ModPoly = std::vector<u64>;  // lowest first, trimmed

void trim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

u64 mulm(u64 a, u64 b, u64 p) { return static_cast<u64>((__uint128_t)a * b % p); }

u64 powm(u64 a, u64 e, u64 p) {
  u64 r = 1;
  for (; e; e >>= 1, a = mulm(a, a, p))
    if (e & 1) r = mulm(r, a, p);
  return r;
}

ModPoly reduce_mod(const IntPoly& f, u64 p) {
  ModPoly a;
  Int pp = static_cast<unsigned long>(p);
  for (const Int& c : f.coefficients()) a.push_back(mod(c, pp).get_ui());
  trim(a);
  return a;
}

ModPoly pmod(ModPoly a, const ModPoly& b, u64 p) {
  u64 inv = powm(b.back(), p - 2, p);
  while (a.size() >= b.size()) {
    u64 f = mulm(a.back(), inv, p);
    std::size_t s = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[s + i] = (a[s + i] + p - mulm(f, b[i], p)) % p;
    trim(a);
  }
  return a;
}

ModPoly pdiv(ModPoly a, const ModPoly& b, u64 p) {
  u64 inv = powm(b.back(), p - 2, p);
  if (a.size() < b.size()) return {};
  ModPoly q(a.size() - b.size() + 1, 0);
  while (a.size() >= b.size()) {
    u64 f = mulm(a.back(), inv, p);
    std::size_t s = a.size() - b.size();
    q[s] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[s + i] = (a[s + i] + p - mulm(f, b[i], p)) % p;
    trim(a);
  }
  trim(q);
  return q;
}

ModPoly pmul(const ModPoly& a, const ModPoly& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  ModPoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + mulm(a[i], b[j], p)) % p;
  trim(c);
  return c;
}

ModPoly pgcd(ModPoly a, ModPoly b, u64 p) {
  while (!b.empty()) {
    ModPoly r = pmod(a, b, p);
    a = b;
    b = r;
  }
  return a;
}

ModPoly psub(ModPoly a, const ModPoly& b, u64 p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

ModPoly ppowmod(ModPoly base, u64 e, const ModPoly& m, u64 p) {
  ModPoly r{1};
  base = pmod(base, m, p);
  for (; e; e >>= 1) {
    if (e & 1) r = pmod(pmul(r, base, p), m, p);
    base = pmod(pmul(base, base, p), m, p);
  }
  return r;
}

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Subset sums of factor degrees, as a bitset over [0, n].
std::bitset<128> subset_sums(const std::vector<int>& degs) {
  std::bitset<128> s;
  s[0] = true;
  for (int d : degs) s |= s << d;
  return s;
}

std::vector<std::complex<long double>> complex_roots(const IntPoly& f) {
  int n = f.degree();
  std::vector<long double> c(n + 1);
  for (int i = 0; i <= n; ++i) c[i] = f.coeff(i).get_d() / f.leading().get_d();
  std::vector<std::complex<long double>> z(n);
  const std::complex<long double> seed(0.4L, 0.9L);
  for (int i = 0; i < n; ++i) z[i] = std::pow(seed, i) * static_cast<long double>(1 + std::abs(c[0]));
  auto eval = [&](std::complex<long double> x) {
    std::complex<long double> r = 0;
    for (int i = n; i >= 0; --i) r = r * x + c[i];
    return r;
  };
  for (int it = 0; it < 2000; ++it) {
    long double delta = 0;
    for (int i = 0; i < n; ++i) {
      std::complex<long double> den = 1;
      for (int j = 0; j < n; ++j)
        if (j != i) den *= (z[i] - z[j]);
      std::complex<long double> step = eval(z[i]) / den;
      z[i] -= step;
      delta = std::max(delta, std::abs(step));
    }
    if (delta < 1e-17L) break;
  }
  return z;
}

// Looks for a monic integer factor of degree <= n/2 among products of root subsets.
bool has_numeric_factor(const IntPoly& f) {
  int n = f.degree();
  if (n > 20) throw PreconditionError("factor search limited to degree 20");
  auto z = complex_roots(f);
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    int k = __builtin_popcount(mask);
    if (2 * k > n) continue;
    std::vector<std::complex<long double>> g{1};
    for (int i = 0; i < n; ++i) {
      if (!((mask >> i) & 1u)) continue;
      std::vector<std::complex<long double>> h(g.size() + 1, 0);
      for (std::size_t j = 0; j < g.size(); ++j) {
        h[j + 1] += g[j];
        h[j] -= g[j] * z[i];
      }
      g.swap(h);
    }
    std::vector<Int> c;
    bool ok = true;
    for (auto& x : g) {
      long double re = std::round(x.real());
      if (std::abs(x.imag()) > 1e-6L || std::abs(x.real() - re) > 1e-6L) {
        ok = false;
        break;
      }
      c.emplace_back(static_cast<long>(re));
    }
    if (!ok) continue;
    IntPoly cand(std::move(c));
    if (cand.degree() >= 1 && divides(cand, f)) return true;
  }
  return false;
}

}  // namespace

std::vector<int> factor_degrees_mod_p(const IntPoly& f, std::uint64_t p) {
  ModPoly a = reduce_mod(f, p);
  if (static_cast<int>(a.size()) - 1 != f.degree()) return {};
  ModPoly da;
  for (std::size_t i = 1; i < a.size(); ++i) da.push_back(mulm(a[i], i % p, p));
  trim(da);
  if (da.empty() || pgcd(a, da, p).size() != 1) return {};
  std::vector<int> degs;
  ModPoly x{0, 1};
  ModPoly h = x;
  ModPoly g = a;
  for (int d = 1; static_cast<int>(g.size()) - 1 >= 2 * d; ++d) {
    h = ppowmod(h, p, g, p);
    ModPoly c = pgcd(g, psub(h, x, p), p);
    int cd = static_cast<int>(c.size()) - 1;
    for (int i = 0; i < cd / d; ++i) degs.push_back(d);
    if (cd > 0) {
      g = pdiv(g, c, p);
      h = pmod(h, g, p);
    }
  }
  if (g.size() > 1) degs.push_back(static_cast<int>(g.size()) - 1);
  std::sort(degs.begin(), degs.end());
  return degs;
}

bool is_irreducible_over_q(const IntPoly& f) {
  int n = f.degree();
  if (n < 1) return false;
  if (n == 1) return true;
  if (content(f) != 1) return false;
  if (n > 100) throw PreconditionError("irreducibility test limited to degree 100");
  std::bitset<128> possible;
  for (int i = 0; i <= n; ++i) possible[i] = true;
  int used = 0;
  for (u64 p = 3; p < 2000 && used < 40; p += 2) {
    if (!is_prime_u64(p)) continue;
    auto degs = factor_degrees_mod_p(f, p);
    if (degs.empty()) continue;
    ++used;
    possible &= subset_sums(degs);
    bool only_trivial = true;
    for (int i = 1; i < n; ++i)
      if (possible[i]) only_trivial = false;
    if (only_trivial) return true;
  }
  return !has_numeric_factor(f);
}

SalemCheck is_salem(const IntPoly& p) {
  if (!p.is_monic()) throw PreconditionError("is_salem expects a monic polynomial");
  if (!is_irreducible_over_q(p)) throw PreconditionError("is_salem expects an irreducible polynomial: " + p.to_string());
  SalemCheck out;
  if (p.degree() < 2 || p.degree() % 2) {
    out.reason = "odd degree";
    return out;
  }
  if (!p.is_reciprocal()) {
    out.reason = "not reciprocal";
    return out;
  }
  IntPoly r = trace_polynomial(p);
  int m = r.degree();
  SturmSequence s(r);
  if (s.count_all_real_roots() != m) {
    out.reason = "trace polynomial has non-real roots";
    return out;
  }
  if (r.eval(Rat(2)) == 0 || r.eval(Rat(-2)) == 0) {
    out.reason = "trace polynomial vanishes at +-2";
    return out;
  }
  int inside = s.count_roots(Rat(-2), Rat(2));
  Rat b = cauchy_bound(r);
  int above = s.count_roots(Rat(2), b);
  if (inside != m - 1 || above != 1) {
    out.reason = "trace polynomial root distribution is not (1 outside, rest in (-2,2))";
    return out;
  }
  SturmSequence sp(p);
  Rat bp = cauchy_bound(p);
  if (sp.count_roots(Rat(1), bp) != 1) throw std::logic_error("Salem root count mismatch");
  RealAlgebraic tau(p, RatInterval{Rat(1), bp});
  tau.refine(Rat(1, 100000000));
  out.salem = true;
  out.tau = tau;
  return out;
}

unsigned order_dimension_D(unsigned n) {
  if (n == 0) throw PreconditionError("D(n) needs n >= 1");
  if (n == 1) return 0;
  if (n == 2) return 1;
  if (n % 4 == 2) return order_dimension_D(n / 2);
  unsigned s = 0;
  unsigned m = n;
  for (unsigned p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    unsigned pk = 1;
    while (m % p == 0) {
      m /= p;
      pk *= p;
    }
    s += static_cast<unsigned>(euler_phi(pk));
  }
  if (m > 1) s += m - 1;
  return s;
}

std::vector<unsigned> cyclotomic_indices_up_to_degree(unsigned bound) {
  std::vector<unsigned> ks;
  // phi(k) >= sqrt(k/2), so k <= 2 bound^2 suffices
  unsigned lim = 2 * bound * bound + 2;
  for (unsigned k = 1; k <= lim; ++k)
    if (euler_phi(k) <= bound) ks.push_back(k);
  return ks;
}

CyclotomicSplit split_cyclotomic(const IntPoly& p) {
  CyclotomicSplit out{{}, p};
  if (p.degree() < 1) return out;
  for (unsigned k : cyclotomic_indices_up_to_degree(static_cast<unsigned>(p.degree()))) {
    IntPoly c = cyclotomic(k);
    for (;;) {
      if (out.rest.degree() < c.degree()) break;
      auto [q, r] = divmod_unit(out.rest, c);
      if (!r.is_zero()) break;
      out.rest = q;
      ++out.cyclotomic[k];
    }
  }
  return out;
}

}  // namespace salemforge
