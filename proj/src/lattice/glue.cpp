#include "salemforge/lattice/glue.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <deque>
#include <numeric>
#include <set>

namespace salemforge {

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<std::int64_t> orders) : orders_(std::move(orders)) {
  for (std::int64_t d : orders_) {
    if (d < 2) throw PreconditionError("cyclic factor orders must be >= 2");
    if (__builtin_mul_overflow(size_, static_cast<std::uint64_t>(d), &size_))
      throw OverflowError("finite abelian group too large");
    exponent_ = std::lcm(exponent_, d);
  }
}

GroupElement FiniteAbelianGroup::unit(std::size_t i) const {
  GroupElement e = zero();
  e[i] = 1;
  return e;
}

GroupElement FiniteAbelianGroup::reduce(GroupElement a) const {
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] %= orders_[i];
    if (a[i] < 0) a[i] += orders_[i];
  }
  return a;
}

GroupElement FiniteAbelianGroup::add(const GroupElement& a, const GroupElement& b) const {
  GroupElement c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    c[i] = a[i] + b[i];
    if (c[i] >= orders_[i]) c[i] -= orders_[i];
  }
  return c;
}

GroupElement FiniteAbelianGroup::neg(const GroupElement& a) const {
  GroupElement c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] ? orders_[i] - a[i] : 0;
  return c;
}

GroupElement FiniteAbelianGroup::scale(const GroupElement& a, std::int64_t m) const {
  GroupElement c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    __int128 v = static_cast<__int128>(a[i]) * m % orders_[i];
    if (v < 0) v += orders_[i];
    c[i] = static_cast<std::int64_t>(v);
  }
  return c;
}

bool FiniteAbelianGroup::is_zero(const GroupElement& a) const {
  for (auto x : a)
    if (x) return false;
  return true;
}

std::int64_t FiniteAbelianGroup::element_order(const GroupElement& a) const {
  std::int64_t o = 1;
  for (std::size_t i = 0; i < a.size(); ++i) o = std::lcm(o, orders_[i] / std::gcd(orders_[i], a[i]));
  return o;
}

std::uint64_t FiniteAbelianGroup::index(const GroupElement& a) const {
  std::uint64_t idx = 0;
  for (std::size_t i = a.size(); i-- > 0;) idx = idx * static_cast<std::uint64_t>(orders_[i]) + a[i];
  return idx;
}

GroupElement FiniteAbelianGroup::element(std::uint64_t idx) const {
  GroupElement a(orders_.size());
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    a[i] = static_cast<std::int64_t>(idx % orders_[i]);
    idx /= orders_[i];
  }
  return a;
}

AbelianInvariants primary_invariants(const std::vector<std::int64_t>& orders) {
  AbelianInvariants inv;
  for (std::int64_t d : orders) {
    for (auto p : prime_divisors(static_cast<std::uint64_t>(d))) {
      std::int64_t pk = 1;
      while (d % static_cast<std::int64_t>(p) == 0) {
        d /= p;
        pk *= p;
      }
      inv.push_back(pk);
    }
  }
  std::sort(inv.begin(), inv.end());
  return inv;
}

std::string invariants_string(const AbelianInvariants& inv) {
  if (inv.empty()) return "0";
  std::string s;
  std::map<std::int64_t, int> count;
  for (auto x : inv) count[x]++;
  for (auto [o, c] : count) {
    if (!s.empty()) s += "+";
    s += "(Z/" + std::to_string(o) + ")";
    if (c > 1) s += "^" + std::to_string(c);
  }
  return s;
}

GlueGroup::GlueGroup(const Lattice& l) : lattice_(l) {
  const IntMatrix& g = l.gram();
  std::size_t n = l.rank();
  if (n == 0) {
    group_ = FiniteAbelianGroup(std::vector<std::int64_t>{});
    even_ = true;
    return;
  }
  SmithForm sf = smith_normal_form(g);
  std::vector<std::int64_t> orders;
  for (std::size_t i = 0; i < n; ++i) {
    const Int& d = sf.S(i, i);
    if (d == 0) throw PreconditionError("glue group of a degenerate lattice");
    if (d == 1) continue;
    orders.push_back(to_int64(d));
    pos_.push_back(i);
    RatVector v(n);
    for (std::size_t k = 0; k < n; ++k) v[k] = make_rat(mod(sf.V(k, i), d), d);
    gens_.push_back(std::move(v));
  }
  coord_map_ = IntMatrix(pos_.size(), n);
  for (std::size_t r = 0; r < pos_.size(); ++r)
    for (std::size_t k = 0; k < n; ++k) coord_map_(r, k) = mod(sf.U(pos_[r], k), sf.S(pos_[r], pos_[r]));
  group_ = FiniteAbelianGroup(orders);
  den_ = group_.exponent();
  even_ = l.is_even();
  std::size_t k = gens_.size();
  bmat_.assign(k, std::vector<std::int64_t>(k, 0));
  qdiag_.assign(k, 0);
  Int den(static_cast<long>(den_));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      Rat v = l.inner(gens_[i], gens_[j]) * den;
      if (v.get_den() != 1) throw std::logic_error("glue form denominator exceeds exponent");
      bmat_[i][j] = to_int64(mod(v.get_num(), den));
      if (i == j) qdiag_[i] = to_int64(mod(v.get_num(), 2 * den));
    }
}

RatVector GlueGroup::lift(const GroupElement& e) const {
  RatVector v(lattice_.rank(), Rat(0));
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    for (std::size_t k = 0; k < v.size(); ++k) v[k] += gens_[i][k] * e[i];
  }
  return v;
}

GroupElement GlueGroup::element_of(const RatVector& x) const {
  const IntMatrix& g = lattice_.gram();
  std::size_t n = lattice_.rank();
  IntVector y(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rat s = 0;
    for (std::size_t j = 0; j < n; ++j) s += g(i, j) * x[j];
    if (s.get_den() != 1) throw PreconditionError("vector is not in the dual lattice");
    y[i] = s.get_num();
  }
  GroupElement e(pos_.size());
  for (std::size_t r = 0; r < pos_.size(); ++r) {
    Int c = 0;
    for (std::size_t k = 0; k < n; ++k) c += coord_map_(r, k) * y[k];
    e[r] = to_int64(mod(c, Int(static_cast<long>(group_.orders()[r]))));
  }
  return e;
}

std::int64_t GlueGroup::b_num(const GroupElement& x, const GroupElement& y) const {
  __int128 s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!x[i]) continue;
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (!y[j]) continue;
      s = (s + static_cast<__int128>(x[i]) * y[j] % den_ * bmat_[i][j]) % den_;
    }
  }
  return static_cast<std::int64_t>(s);
}

std::int64_t GlueGroup::q_num(const GroupElement& x) const {
  if (!even_) throw PreconditionError("q is defined for even lattices only");
  __int128 m = 2 * static_cast<__int128>(den_);
  __int128 s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!x[i]) continue;
    s = (s + static_cast<__int128>(x[i]) * x[i] % m * qdiag_[i]) % m;
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      if (!x[j]) continue;
      s = (s + 2 * (static_cast<__int128>(x[i]) * x[j] % m * bmat_[i][j] % m)) % m;
    }
  }
  return static_cast<std::int64_t>(s);
}

Rat GlueGroup::b(const GroupElement& x, const GroupElement& y) const {
  return make_rat(Int(static_cast<long>(b_num(x, y))), Int(static_cast<long>(den_)));
}

Rat GlueGroup::q(const GroupElement& x) const {
  return make_rat(Int(static_cast<long>(q_num(x))), Int(static_cast<long>(den_)));
}

IntMatrix GlueGroup::action_matrix(const IntMatrix& f) const {
  std::size_t k = gens_.size();
  IntMatrix a(k, k);
  RatMatrix fr = to_rat(f);
  for (std::size_t j = 0; j < k; ++j) {
    RatVector img = fr * gens_[j];
    GroupElement e = element_of(img);
    for (std::size_t i = 0; i < k; ++i) a(i, j) = e[i];
  }
  return a;
}

GroupElement GlueGroup::apply(const IntMatrix& action, const GroupElement& x) const {
  std::size_t k = x.size();
  GroupElement y(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    __int128 s = 0;
    std::int64_t d = group_.orders()[i];
    for (std::size_t j = 0; j < k; ++j) {
      if (!x[j]) continue;
      s = (s + static_cast<__int128>(action(i, j).get_si() % d) * x[j]) % d;
    }
    if (s < 0) s += d;
    y[i] = static_cast<std::int64_t>(s);
  }
  return y;
}

std::vector<GroupElement> GlueGroup::sylow_generators(std::int64_t p) const {
  std::vector<GroupElement> out;
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    std::int64_t d = group_.orders()[i], m = d;
    while (m % p == 0) m /= p;
    if (m == d) continue;
    out.push_back(group_.scale(group_.unit(i), m));
  }
  return out;
}

std::vector<GroupElement> subgroup_elements(const FiniteAbelianGroup& g, const std::vector<GroupElement>& gens) {
  std::set<std::uint64_t> seen{g.index(g.zero())};
  std::vector<GroupElement> out{g.zero()};
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (const auto& s : gens) {
      GroupElement y = g.add(out[head], s);
      if (seen.insert(g.index(y)).second) out.push_back(y);
    }
  }
  return out;
}

AbelianInvariants subgroup_invariants(const FiniteAbelianGroup& g, const std::vector<GroupElement>& elements) {
  std::uint64_t n = elements.size();
  AbelianInvariants inv;
  for (auto p64 : prime_divisors(n)) {
    std::int64_t p = static_cast<std::int64_t>(p64);
    // e_k = #{cyclic p-factors of order >= p^k}
    std::vector<int> e{0};
    int prev_log = 0;
    for (std::int64_t pk = p;; pk *= p) {
      std::uint64_t killed = 0;
      for (const auto& x : elements)
        if (g.is_zero(g.scale(x, pk))) ++killed;
      int lg = 0;
      for (std::uint64_t t = killed; t > 1; t /= p) ++lg;
      if (lg == prev_log) break;
      e.push_back(lg - prev_log);
      prev_log = lg;
    }
    e.push_back(0);
    std::int64_t pk = 1;
    for (std::size_t k = 1; k + 1 < e.size(); ++k) {
      pk *= p;
      for (int c = 0; c < e[k] - e[k + 1]; ++c) inv.push_back(pk);
    }
  }
  std::sort(inv.begin(), inv.end());
  return inv;
}

std::pair<double, double> gauss_sum(const GlueGroup& g, const std::vector<GroupElement>& elements) {
  std::complex<double> s = 0;
  const double pi = std::acos(-1.0);
  for (const auto& x : elements) s += std::polar(1.0, pi * static_cast<double>(g.q_num(x)) / g.den());
  s /= std::sqrt(static_cast<double>(elements.size()));
  return {s.real(), s.imag()};
}

bool delta_is_zero(const GlueGroup& g) {
  // q(x + y) = q(x) + q(y) + 2b(x, y) and 2b is integral on the 2-elementary part
  for (const auto& x : g.sylow_generators(2))
    if (g.q(x).get_den() != 1) return false;
  return true;
}

}  // namespace salemforge
