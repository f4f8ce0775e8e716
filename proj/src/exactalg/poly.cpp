#include "salemforge/exactalg/poly.hpp"

#include <cctype>
#include <map>

#include "salemforge/exactalg/linalg.hpp"

namespace salemforge {

namespace {

template <class T>
std::string poly_to_string(const std::vector<T>& c, char var) {
  std::string s;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    T a = c[i];
    bool neg = a < 0;
    if (neg) a = -a;
    if (s.empty())
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    std::string coef = a.get_str();
    if (i == 0) {
      s += coef;
      continue;
    }
    if (coef != "1") s += coef;
    s += var;
    if (i > 1) s += "^" + std::to_string(i);
  }
  return s.empty() ? "0" : s;
}

}  // namespace

template <>
std::string Poly<Int>::to_string(char var) const {
  return poly_to_string(c_, var);
}
template <>
std::string Poly<Rat>::to_string(char var) const {
  return poly_to_string(c_, var);
}

IntPoly pow(const IntPoly& p, unsigned e) {
  IntPoly r{1};
  for (unsigned i = 0; i < e; ++i) r = r * p;
  return r;
}

RatPoly to_rat(const IntPoly& p) {
  std::vector<Rat> c;
  for (const Int& a : p.coefficients()) c.emplace_back(a);
  return RatPoly(std::move(c));
}

Int content(const IntPoly& p) {
  Int g = 0;
  for (const Int& a : p.coefficients()) g = gcd(g, a);
  return g;
}

IntPoly primitive_part(const RatPoly& p) {
  if (p.is_zero()) return IntPoly();
  Int d = 1;
  for (const Rat& a : p.coefficients()) d = lcm(d, a.get_den());
  std::vector<Int> c;
  for (const Rat& a : p.coefficients()) c.push_back(a.get_num() * (d / a.get_den()));
  IntPoly q(std::move(c));
  Int g = content(q);
  if (q.leading() < 0) g = -g;
  std::vector<Int> c2;
  for (const Int& a : q.coefficients()) c2.push_back(a / g);
  return IntPoly(std::move(c2));
}

std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b) {
  if (b.is_zero()) throw PreconditionError("polynomial division by zero");
  std::vector<Rat> r = a.coefficients();
  int db = b.degree();
  if (a.degree() < db) return {RatPoly(), a};
  std::vector<Rat> q(a.degree() - db + 1, Rat(0));
  Rat lb = b.leading();
  for (int i = a.degree(); i >= db; --i) {
    if (r[i] == 0) continue;
    Rat f = r[i] / lb;
    q[i - db] = f;
    for (int j = 0; j <= db; ++j) r[i - db + j] -= f * b.coefficients()[j];
  }
  return {RatPoly(std::move(q)), RatPoly(std::move(r))};
}

RatPoly gcd(const RatPoly& a0, const RatPoly& b0) {
  RatPoly a = a0, b = b0;
  while (!b.is_zero()) {
    RatPoly r = divmod(a, b).second;
    a = b;
    b = r;
  }
  if (a.is_zero()) return a;
  Rat l = a.leading();
  return (1 / l) * a;
}

std::pair<IntPoly, IntPoly> divmod_unit(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero() || abs(b.leading()) != 1) throw PreconditionError("divisor must have unit leading coefficient");
  std::vector<Int> r = a.coefficients();
  int db = b.degree();
  if (a.degree() < db) return {IntPoly(), a};
  std::vector<Int> q(a.degree() - db + 1, Int(0));
  const Int& lb = b.leading();
  for (int i = a.degree(); i >= db; --i) {
    if (r[i] == 0) continue;
    Int f = r[i] * lb;  // lb = +-1
    q[i - db] = f;
    for (int j = 0; j <= db; ++j) r[i - db + j] -= f * b.coefficients()[j];
  }
  return {IntPoly(std::move(q)), IntPoly(std::move(r))};
}

bool divides(const IntPoly& d, const IntPoly& a) {
  return divmod(to_rat(a), to_rat(d)).second.is_zero();
}

IntPoly exact_div(const IntPoly& a, const IntPoly& d) {
  auto [q, r] = divmod(to_rat(a), to_rat(d));
  if (!r.is_zero()) throw PreconditionError("polynomial division is not exact");
  std::vector<Int> c;
  for (const Rat& x : q.coefficients()) {
    if (x.get_den() != 1) throw PreconditionError("quotient is not integral");
    c.push_back(x.get_num());
  }
  return IntPoly(std::move(c));
}

IntPoly compose(const IntPoly& p, const IntPoly& q) {
  IntPoly r;
  for (std::size_t i = p.coefficients().size(); i-- > 0;) r = r * q + IntPoly::constant(p.coefficients()[i]);
  return r;
}

namespace {

Rat resultant_q(const RatPoly& a, const RatPoly& b) {
  if (a.is_zero() || b.is_zero()) return 0;
  int m = a.degree(), n = b.degree();
  if (n == 0) {
    Rat r = 1;
    for (int i = 0; i < m; ++i) r *= b.leading();
    return r;
  }
  if (m < n) {
    Rat r = resultant_q(b, a);
    return ((m * n) % 2) ? Rat(-r) : r;
  }
  RatPoly rem = divmod(a, b).second;
  if (rem.is_zero()) return 0;
  Rat f = 1;
  for (int i = 0; i < m - rem.degree(); ++i) f *= b.leading();
  Rat r = f * resultant_q(b, rem);
  return ((m * n) % 2) ? Rat(-r) : r;
}

}  // namespace

Int resultant(const IntPoly& p, const IntPoly& q) {
  Rat r = resultant_q(to_rat(p), to_rat(q));
  if (r.get_den() != 1) throw std::logic_error("non-integral resultant");
  return r.get_num();
}

IntPoly cyclotomic(unsigned k) {
  if (k == 0) throw PreconditionError("cyclotomic index must be positive");
  static std::map<unsigned, IntPoly> cache;
  auto it = cache.find(k);
  if (it != cache.end()) return it->second;
  IntPoly p = IntPoly::monomial(Int(1), k) - IntPoly{1};
  for (unsigned d = 1; d < k; ++d)
    if (k % d == 0) p = divmod_unit(p, cyclotomic(d)).first;
  cache.emplace(k, p);
  return p;
}

IntPoly char_poly(const IntMatrix& m) {
  if (!m.is_square()) throw PreconditionError("char_poly of non-square matrix");
  std::size_t n = m.rows();
  // Berkowitz: vector for the trailing 1x1 block, then grow to the full matrix.
  std::vector<Int> vec{Int(1)};  // highest degree first
  for (std::size_t t = n; t-- > 0;) {
    // current block is m[t.., t..]; vec holds the charpoly of m[t+1.., t+1..]
    std::size_t sz = n - t;  // size of the block
    const Int& a = m(t, t);
    // diags: 1, -a, -R C, -R A C, ...
    std::vector<Int> diags{Int(1), Int(-a)};
    std::vector<Int> col(sz - 1);
    for (std::size_t i = 0; i + 1 < sz; ++i) col[i] = m(t + 1 + i, t);
    for (std::size_t k = 0; k + 1 < sz; ++k) {
      Int s = 0;
      for (std::size_t j = 0; j + 1 < sz; ++j) s += m(t, t + 1 + j) * col[j];
      diags.push_back(-s);
      std::vector<Int> nc(sz - 1, Int(0));
      for (std::size_t i = 0; i + 1 < sz; ++i)
        for (std::size_t j = 0; j + 1 < sz; ++j) nc[i] += m(t + 1 + i, t + 1 + j) * col[j];
      col.swap(nc);
    }
    // toeplitz (sz+1) x sz times vec (length sz)
    std::vector<Int> nv(sz + 1, Int(0));
    for (std::size_t i = 0; i <= sz; ++i)
      for (std::size_t j = 0; j < sz && j <= i; ++j) nv[i] += diags[i - j] * vec[j];
    vec.swap(nv);
  }
  std::vector<Int> c(vec.rbegin(), vec.rend());
  return IntPoly(std::move(c));
}

IntMatrix eval_matrix(const IntPoly& p, const IntMatrix& m) {
  std::size_t n = m.rows();
  IntMatrix r(n, n);
  const auto& c = p.coefficients();
  for (std::size_t i = c.size(); i-- > 0;) {
    r = r * m;
    for (std::size_t d = 0; d < n; ++d) r(d, d) += c[i];
  }
  return r;
}

namespace {

std::string normalize_poly_text(const std::string& s) {
  static const std::pair<const char*, const char*> repl[] = {
      {"−", "-"}, {"⁰", "^0"}, {"¹", "^1"}, {"²", "^2"}, {"³", "^3"},
      {"⁴", "^4"}, {"⁵", "^5"}, {"⁶", "^6"}, {"⁷", "^7"}, {"⁸", "^8"},
      {"⁹", "^9"}, {"·", "*"}};
  std::string out = s;
  for (auto [from, to] : repl) {
    std::string f(from), t(to);
    for (std::size_t pos = 0; (pos = out.find(f, pos)) != std::string::npos;) {
      out.replace(pos, f.size(), t);
      pos += t.size();
    }
  }
  // merge "^1^0" style sequences from multi-digit superscripts
  std::string merged;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i] == '^' && !merged.empty() && std::isdigit(static_cast<unsigned char>(merged.back()))) {
      // previous char is a digit that was itself an exponent: drop this caret
      std::size_t k = merged.size();
      while (k > 0 && std::isdigit(static_cast<unsigned char>(merged[k - 1]))) --k;
      if (k > 0 && merged[k - 1] == '^') continue;
    }
    if (!std::isspace(static_cast<unsigned char>(out[i]))) merged += out[i];
  }
  return merged;
}

}  // namespace

IntPoly parse_poly(const std::string& text) {
  std::string s = normalize_poly_text(text);
  if (s.empty()) throw PreconditionError("empty polynomial");
  std::map<unsigned, Int> terms;
  std::size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      if (s[i] == '-') sign = -1;
      ++i;
    }
    std::string digits;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) digits += s[i++];
    if (i < s.size() && s[i] == '*') ++i;
    unsigned e = 0;
    if (i < s.size() && (s[i] == 'x' || s[i] == 'y')) {
      ++i;
      e = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::string ed;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ed += s[i++];
        if (ed.empty()) throw PreconditionError("bad exponent in polynomial: " + text);
        e = static_cast<unsigned>(std::stoul(ed));
      }
    } else if (digits.empty()) {
      throw PreconditionError("cannot parse polynomial: " + text);
    }
    Int c = digits.empty() ? Int(1) : Int(digits);
    terms[e] += sign * c;
    if (i < s.size() && s[i] != '+' && s[i] != '-') throw PreconditionError("cannot parse polynomial: " + text);
  }
  unsigned deg = terms.empty() ? 0 : terms.rbegin()->first;
  std::vector<Int> c(deg + 1, Int(0));
  for (auto& [e, v] : terms) c[e] = v;
  return IntPoly(std::move(c));
}

}  // namespace salemforge
