#include "salemforge/twistglue/principal.hpp"

#include <functional>
#include <set>

#include "salemforge/exactalg/salem.hpp"
#include "salemforge/lattice/glue.hpp"

namespace salemforge {

namespace {

RatMatrix rat_eval(const IntPoly& p, const RatMatrix& m) {
  std::size_t n = m.rows();
  RatMatrix r(n, n);
  const auto& c = p.coefficients();
  for (std::size_t i = c.size(); i-- > 0;) {
    r = r * m;
    for (std::size_t d = 0; d < n; ++d) r(d, d) += c[i];
  }
  return r;
}

Rat trace(const RatMatrix& m) {
  Rat t = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

}  // namespace

PLattice principal_lattice(const IntPoly& p) {
  if (!p.is_monic() || p.degree() < 2 || p.degree() % 2 || !p.is_reciprocal())
    throw PreconditionError("principal lattice needs a monic reciprocal polynomial of even degree");
  std::size_t d = static_cast<std::size_t>(p.degree());
  IntMatrix m = companion_matrix(p);
  RatMatrix mq = to_rat(m);
  RatMatrix minv = inverse(mq);
  RatMatrix y = mq + minv;
  IntPoly r = trace_polynomial(p);
  RatMatrix alpha = inverse(rat_eval(r.derivative(), y));
  // powers x^k for k in (-d, d)
  std::vector<RatMatrix> pos{RatMatrix::identity(d)}, neg{RatMatrix::identity(d)};
  for (std::size_t k = 1; k < d; ++k) {
    pos.push_back(pos.back() * mq);
    neg.push_back(neg.back() * minv);
  }
  IntMatrix g(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const RatMatrix& xk = i >= j ? pos[i - j] : neg[j - i];
      Rat t = trace(xk * alpha);
      if (t.get_den() != 1) throw PreconditionError("principal lattice Gram matrix is not integral");
      g(i, j) = t.get_num();
    }
  PLattice out{Lattice(g, "L0(" + p.to_string() + ")"), m};
  require_isometry(out.lattice, out.f);
  return out;
}

PLattice twist(const PLattice& l, const IntPoly& a) {
  IntMatrix finv = to_int(inverse(l.f));
  IntMatrix y = l.f + finv;
  IntMatrix am = eval_matrix(a, y);
  IntMatrix g = am.transpose() * l.lattice.gram();
  if (!g.is_symmetric()) throw PreconditionError("twist: a(f + f^-1) is not self-adjoint");
  if (determinant(g) == 0) throw PreconditionError("twist: degenerate result");
  PLattice out{Lattice(g, l.lattice.label() + "(" + a.to_string('y') + ")"), l.f};
  require_isometry(out.lattice, out.f);
  return out;
}

std::vector<std::uint64_t> feasible_primes(const IntPoly& s) {
  int bound = 10 - s.degree();
  std::set<std::uint64_t> ps;
  if (bound <= 0) return {};
  for (unsigned k : cyclotomic_indices_up_to_degree(static_cast<unsigned>(bound))) {
    Int r = resultant(s, cyclotomic(k));
    if (r == 0) throw PreconditionError("S shares a root with a cyclotomic polynomial");
    if (abs(r) == 1) continue;
    for (auto& [q, e] : factor_integer(r)) ps.insert(q.get_ui());
  }
  return {ps.begin(), ps.end()};
}

SalemFactorReport salem_factor_check(const Lattice& l, const IntMatrix& f, const IntPoly& s) {
  SalemFactorReport rep;
  int bound = 10 - s.degree();
  GlueGroup g(l);
  auto feas = feasible_primes(s);
  std::set<std::uint64_t> fs(feas.begin(), feas.end());
  rep.primes_ok = true;
  for (auto q : prime_divisors(g.size()))
    if (!fs.count(q)) rep.primes_ok = false;
  rep.glue_order = glue_action_order(l, f);
  rep.d_of_order = order_dimension_D(static_cast<unsigned>(rep.glue_order));
  rep.order_ok = static_cast<int>(rep.d_of_order) <= bound;
  if (g.num_generators() == 0) {
    rep.annihilator_ok = true;
    return rep;
  }
  IntMatrix act = g.action_matrix(f);
  std::vector<unsigned> ks = bound > 0 ? cyclotomic_indices_up_to_degree(static_cast<unsigned>(bound))
                                       : std::vector<unsigned>{};
  auto kills = [&](const IntPoly& c) {
    for (std::size_t i = 0; i < g.num_generators(); ++i) {
      // c(f) g_i via Horner on the action
      GroupElement acc = g.group().zero();
      const auto& co = c.coefficients();
      for (std::size_t k = co.size(); k-- > 0;) {
        acc = g.apply(act, acc);
        std::int64_t ck = to_int64(mod(co[k], Int(static_cast<long>(g.group().exponent()))));
        acc = g.group().add(acc, g.group().scale(g.unit(i), ck));
      }
      if (!g.group().is_zero(acc)) return false;
    }
    return true;
  };
  std::vector<unsigned> chosen;
  std::function<bool(std::size_t, int, const IntPoly&)> rec = [&](std::size_t start, int deg, const IntPoly& c) {
    if (!chosen.empty() && kills(c)) return true;
    for (std::size_t i = start; i < ks.size(); ++i) {
      int d = static_cast<int>(euler_phi(ks[i]));
      if (deg + d > bound) continue;
      chosen.push_back(ks[i]);
      if (rec(i + 1, deg + d, c * cyclotomic(ks[i]))) return true;
      chosen.pop_back();
    }
    return false;
  };
  rep.annihilator_ok = rec(0, 0, IntPoly{1});
  if (rep.annihilator_ok) rep.annihilator = chosen;
  return rep;
}

}  // namespace salemforge
