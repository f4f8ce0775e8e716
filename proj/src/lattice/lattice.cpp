#include "salemforge/lattice/lattice.hpp"

#include <regex>

#include "salemforge/lattice/glue.hpp"

namespace salemforge {

Lattice::Lattice(IntMatrix gram, std::string label) : gram_(std::move(gram)), label_(std::move(label)) {
  if (!gram_.is_symmetric()) throw PreconditionError("Gram matrix must be square and symmetric");
}

bool Lattice::is_even() const {
  for (std::size_t i = 0; i < rank(); ++i)
    if (mpz_odd_p(gram_(i, i).get_mpz_t())) return false;
  return true;
}

bool Lattice::is_positive_definite() const {
  Signature s = signature();
  return s.zero == 0 && s.negative == 0;
}

bool Lattice::is_negative_definite() const {
  Signature s = signature();
  return s.zero == 0 && s.positive == 0;
}

Rat Lattice::inner(const RatVector& x, const RatVector& y) const {
  Rat s = 0;
  for (std::size_t i = 0; i < rank(); ++i) {
    if (x[i] == 0) continue;
    Rat t = 0;
    for (std::size_t j = 0; j < rank(); ++j)
      if (gram_(i, j) != 0) t += gram_(i, j) * y[j];
    s += x[i] * t;
  }
  return s;
}

Lattice direct_sum(const Lattice& a, const Lattice& b) {
  std::string lab = a.label().empty() || b.label().empty() ? "" : a.label() + "+" + b.label();
  return Lattice(block_diagonal(a.gram(), b.gram()), lab);
}

Lattice direct_sum(const std::vector<Lattice>& parts) {
  Lattice acc(IntMatrix(0, 0), "");
  bool first = true;
  std::string lab;
  for (const auto& p : parts) {
    acc = Lattice(block_diagonal(acc.gram(), p.gram()));
    lab += (first ? "" : "+") + p.label();
    first = false;
  }
  acc.set_label(lab);
  return acc;
}

Lattice sublattice_gram(const Lattice& l, const IntMatrix& basis, std::string label) {
  return Lattice(basis * l.gram() * basis.transpose(), std::move(label));
}

Lattice rational_sublattice(const Lattice& l, const RatMatrix& basis, std::string label) {
  RatMatrix g = basis * to_rat(l.gram()) * basis.transpose();
  if (!is_integral(g)) throw PreconditionError("sublattice Gram matrix is not integral");
  return Lattice(to_int(g), std::move(label));
}

Lattice rescale(const Lattice& l, const Rat& a) {
  if (a == 0) throw PreconditionError("rescale by zero");
  RatMatrix g = to_rat(l.gram());
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) g(i, j) *= a;
  if (!is_integral(g)) throw PreconditionError("rescaled Gram matrix is not integral");
  const Int& den = a.get_den();
  if (abs(a.get_num()) == 1 && den > 1 && factor_integer(den).size() == 1 && factor_integer(den)[0].second == 1) {
    // L(1/p): G(L)_p must be F_p^n, and for p = 2 also b(x,x) = 0
    GlueGroup gg(l);
    std::size_t n = l.rank();
    std::size_t p_rank = 0;
    for (std::size_t i = 0; i < gg.num_generators(); ++i) {
      const Int& d = gg.order(i);
      if (mpz_divisible_p(d.get_mpz_t(), den.get_mpz_t())) {
        ++p_rank;
        Int d2 = den * den;
        if (mpz_divisible_p(d.get_mpz_t(), d2.get_mpz_t()))
          throw PreconditionError("rescale by 1/" + den.get_str() + ": glue group has elements of order " +
                                  den.get_str() + "^2");
      }
    }
    if (p_rank != n)
      throw PreconditionError("rescale by 1/" + den.get_str() + ": p-part of the glue group has rank " +
                              std::to_string(p_rank) + " < " + std::to_string(n));
    if (den == 2) {
      for (std::size_t i = 0; i < gg.num_generators(); ++i) {
        GroupElement e = gg.unit(i);
        Rat bxx = gg.b(e, e);
        if (bxx != 0)
          throw PreconditionError("rescale by 1/2: b(x,x) = " + bxx.get_str() + " != 0 for glue generator " +
                                  std::to_string(i));
      }
    }
  }
  std::string lab = l.label().empty() ? "" : l.label() + "(" + a.get_str() + ")";
  return Lattice(to_int(g), lab);
}

Lattice lattice_U(long n) {
  return Lattice(IntMatrix{{0, n}, {n, 0}}, n == 1 ? "U" : "U(" + std::to_string(n) + ")");
}

namespace {

Lattice from_edges(int n, const std::vector<std::pair<int, int>>& edges, std::string label) {
  IntMatrix g(n, n);
  for (int i = 0; i < n; ++i) g(i, i) = -2;
  for (auto [a, b] : edges) g(a, b) = g(b, a) = 1;
  return Lattice(g, std::move(label));
}

}  // namespace

Lattice lattice_A(int k) {
  if (k < 1) throw PreconditionError("A_k needs k >= 1");
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < k; ++i) e.push_back({i, i + 1});
  return from_edges(k, e, "A" + std::to_string(k));
}

Lattice lattice_D(int l) {
  if (l < 4) throw PreconditionError("D_l needs l >= 4");
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < l - 1; ++i) e.push_back({i, i + 1});
  e.push_back({l - 3, l - 1});
  return from_edges(l, e, "D" + std::to_string(l));
}

Lattice lattice_E(int n) {
  if (n < 6 || n > 8) throw PreconditionError("E_n needs n in 6..8");
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n - 1; ++i) e.push_back({i, i + 1});
  e.push_back({n - 4, n - 1});
  return from_edges(n, e, "E" + std::to_string(n));
}

Lattice lattice_E10() {
  Lattice l = direct_sum(lattice_U(), lattice_E(8));
  l.set_label("E10");
  return l;
}

Lattice lattice_diag(const std::vector<long>& d) {
  IntMatrix g(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) g(i, i) = d[i];
  return Lattice(g);
}

Lattice lattice_I(int r, int s) {
  std::vector<long> d(r, 1);
  d.insert(d.end(), s, -1);
  Lattice l = lattice_diag(d);
  l.set_label("I_{" + std::to_string(r) + "," + std::to_string(s) + "}");
  return l;
}

Lattice lattice_II(int r, int s) {
  if ((r - s) % 8 != 0) throw PreconditionError("II_{r,s} needs r = s mod 8");
  std::vector<Lattice> parts;
  int u = std::min(r, s);
  for (int i = 0; i < u; ++i) parts.push_back(lattice_U());
  for (int i = 0; i < (s - u) / 8; ++i) parts.push_back(lattice_E(8));
  for (int i = 0; i < (r - u) / 8; ++i) parts.push_back(rescale(lattice_E(8), Rat(-1)));
  Lattice l = direct_sum(parts);
  l.set_label("II_{" + std::to_string(r) + "," + std::to_string(s) + "}");
  return l;
}

Lattice lattice_from_name(const std::string& name0) {
  std::string name;
  for (char c : name0)
    if (c != ' ') name += c;
  // top-level sums
  std::size_t depth = 0;
  for (std::size_t i = 0; i < name.size(); ++i) {
    if (name[i] == '{' || name[i] == '(') ++depth;
    if (name[i] == '}' || name[i] == ')') --depth;
    if (depth == 0 && (name[i] == '+')) {
      Lattice l = direct_sum(lattice_from_name(name.substr(0, i)), lattice_from_name(name.substr(i + 1)));
      l.set_label(name);
      return l;
    }
  }
  std::smatch m;
  static const std::regex scaled(R"(^(.*)\((-?\d+(?:/\d+)?)\)$)");
  if (std::regex_match(name, m, scaled) && m[1].str() != "U") {
    Rat a(m[2].str());
    a.canonicalize();
    Lattice l = rescale(lattice_from_name(m[1].str()), a);
    l.set_label(name);
    return l;
  }
  static const std::regex ade(R"(^([ADE])(\d+)$)");
  static const std::regex ii(R"(^(I|II)_\{?(\d+),(\d+)\}?$)");
  static const std::regex u(R"(^U(?:\((\d+)\))?$)");
  if (std::regex_match(name, m, u)) return lattice_U(m[1].matched ? std::stol(m[1].str()) : 1);
  if (name == "E10") return lattice_E10();
  if (std::regex_match(name, m, ade)) {
    int k = std::stoi(m[2].str());
    if (m[1] == "A") return lattice_A(k);
    if (m[1] == "D") return lattice_D(k);
    return lattice_E(k);
  }
  if (std::regex_match(name, m, ii)) {
    int r = std::stoi(m[2].str()), s = std::stoi(m[3].str());
    return m[1] == "I" ? lattice_I(r, s) : lattice_II(r, s);
  }
  throw PreconditionError("unknown lattice name: " + name0);
}

std::optional<UnimodularClass> classify_even_unimodular(const Lattice& l) {
  if (!l.is_even() || abs(l.det()) != 1) return std::nullopt;
  Signature s = l.signature();
  if (s.positive > 0 && s.negative > 0) {
    return UnimodularClass{"II_{" + std::to_string(s.positive) + "," + std::to_string(s.negative) + "}",
                           s.positive, s.negative};
  }
  if (l.rank() == 0) return UnimodularClass{"0", 0, 0};
  // definite even unimodular of rank 8 is E8 up to sign
  if (l.rank() == 8) return UnimodularClass{s.positive ? "E8(-1)" : "E8", s.positive, s.negative};
  return std::nullopt;
}

}  // namespace salemforge
