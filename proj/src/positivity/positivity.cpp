#include "salemforge/positivity/positivity.hpp"

#include <cmath>
#include <random>
#include <set>

#include "salemforge/exactalg/linalg.hpp"
#include "salemforge/exactalg/salem.hpp"
#include "salemforge/isom/isometry.hpp"
#include "salemforge/lattice/enumerate.hpp"
#include "salemforge/lattice/sublattice.hpp"

namespace salemforge {

namespace {

std::vector<RatPoly> combine(const RealNumberField& k, const std::vector<RatPoly>& coeffs,
                             const std::vector<IntVector>& vecs) {
  std::size_t n = vecs.front().size();
  std::vector<RatPoly> out(n);
  for (std::size_t j = 0; j < coeffs.size(); ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (vecs[j][i] != 0) out[i] = out[i] + Rat(vecs[j][i]) * coeffs[j];
  for (auto& e : out) e = k.reduce(e);
  return out;
}

// Coefficients (lowest first) of S(x) / (x - t) over Q(t), where S(t) = 0.
std::vector<RatPoly> deflate(const RealNumberField& k, const IntPoly& s, const RatPoly& t) {
  int d = s.degree();
  std::vector<RatPoly> q(static_cast<std::size_t>(d));
  q[d - 1] = RatPoly::constant(Rat(1));
  for (int j = d - 1; j >= 1; --j) q[j - 1] = k.reduce(RatPoly::constant(Rat(s.coeff(j))) + k.mul(t, q[j]));
  return q;
}

std::vector<RatPoly> eigenvector(const RealNumberField& k, const IntMatrix& f, const IntPoly& s, const IntPoly& c,
                                 const RatPoly& t) {
  std::size_t n = f.rows();
  std::vector<RatPoly> q = deflate(k, s, t);
  IntMatrix cf = eval_matrix(c, f);
  for (std::size_t e = 0; e < n; ++e) {
    IntVector u(n, 0);
    u[e] = 1;
    u = cf * u;
    std::vector<IntVector> vecs{u};
    for (std::size_t j = 1; j < q.size(); ++j) vecs.push_back(f * vecs.back());
    auto v = combine(k, q, vecs);
    for (const auto& x : v)
      if (!x.is_zero()) return v;
  }
  throw std::logic_error("no eigenvector found");
}

std::vector<RatPoly> gram_times(const RealNumberField& k, const IntMatrix& g, const std::vector<RatPoly>& v) {
  std::size_t n = v.size();
  std::vector<RatPoly> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    RatPoly s;
    for (std::size_t j = 0; j < n; ++j)
      if (g(i, j) != 0) s = s + Rat(g(i, j)) * v[j];
    out[i] = k.reduce(s);
  }
  return out;
}

RatPoly pairing(const IntVector& r, const std::vector<RatPoly>& gv) {
  RatPoly s;
  for (std::size_t i = 0; i < r.size(); ++i)
    if (r[i] != 0) s = s + Rat(r[i]) * gv[i];
  return s;
}

}  // namespace

SalemSplit salem_split(const IntMatrix& f) {
  IntPoly chi = char_poly(f);
  CyclotomicSplit cs = split_cyclotomic(chi);
  if (cs.rest.degree() < 2) throw PreconditionError("spectral radius is 1: no Salem factor");
  SalemCheck sc = is_salem(cs.rest);
  if (!sc.salem) throw PreconditionError("non-cyclotomic part of the characteristic polynomial is not Salem");
  SalemSplit out;
  out.salem = cs.rest;
  out.c0 = IntPoly::constant(Int(1));
  for (const auto& [k, m] : cs.cyclotomic) {
    if (k == 1) {
      out.k = m;
      continue;
    }
    out.c0 = out.c0 * pow(cyclotomic(k), static_cast<unsigned>(m));
  }
  return out;
}

std::vector<IntVector> cyclic_roots(const Lattice& l, const IntMatrix& f, Budget& budget) {
  SalemSplit sp = salem_split(f);
  if (sp.c0.degree() == 0) return {};
  Sublattice ker = kernel_sublattice(l, f, sp.c0);
  if (ker.rank() == 0) return {};
  Lattice kl = ker.lattice();
  if (!kl.is_negative_definite()) throw std::logic_error("Ker C0(f) is not negative definite");
  std::vector<IntVector> out;
  for (const auto& r : roots(kl, budget)) {
    IntVector v(l.rank(), 0);
    for (std::size_t i = 0; i < ker.rank(); ++i)
      if (r[i])
        for (std::size_t j = 0; j < l.rank(); ++j) v[j] += Int(static_cast<long>(r[i])) * ker.basis()(i, j);
    out.push_back(std::move(v));
  }
  return out;
}

int cyclic_period(const IntMatrix& f, const IntVector& r, int max_period) {
  IntVector sum = r, cur = r;
  for (int i = 1; i <= max_period; ++i) {
    cur = f * cur;
    for (std::size_t j = 0; j < sum.size(); ++j) sum[j] += cur[j];
    bool zero = true;
    for (const auto& x : sum)
      if (x != 0) {
        zero = false;
        break;
      }
    if (zero) return i;
  }
  return 0;
}

EigenPair salem_eigenpair(const Lattice& l, const IntMatrix& f) {
  require_isometry(l, f);
  SalemSplit sp = salem_split(f);
  SalemCheck sc = is_salem(sp.salem);
  RealAlgebraic tau = *sc.tau;
  tau.refine(Rat(1, 1) / Rat(Int(1) << 100));
  RealNumberField k(sp.salem, tau);
  IntPoly c = exact_div(char_poly(f), sp.salem);
  RatPoly t = k.gen();
  RatPoly tinv = k.inv(t);
  std::vector<RatPoly> v = eigenvector(k, f, sp.salem, c, t);
  std::vector<RatPoly> w = eigenvector(k, f, sp.salem, c, tinv);
  // exact eigen-equations
  std::size_t n = l.rank();
  for (std::size_t i = 0; i < n; ++i) {
    RatPoly fv, fw;
    for (std::size_t j = 0; j < n; ++j)
      if (f(i, j) != 0) {
        fv = fv + Rat(f(i, j)) * v[j];
        fw = fw + Rat(f(i, j)) * w[j];
      }
    if (k.reduce(fv - k.mul(t, v[i])) != RatPoly() || k.reduce(fw - k.mul(tinv, w[i])) != RatPoly())
      throw std::logic_error("eigenvector check failed");
  }
  // scale both to unit-size entries (positive rational factors keep all signs)
  auto normalize = [&](std::vector<RatPoly>& x) {
    long double m = 0;
    for (const auto& e : x) m = std::max(m, std::fabs(k.approx(e)));
    if (m <= 0) return;
    Rat s(static_cast<double>(1.0L / m));
    if (s <= 0) return;
    for (auto& e : x) e = s * e;
  };
  normalize(v);
  normalize(w);
  std::vector<RatPoly> gw = gram_times(k, l.gram(), w);
  RatPoly vw;
  for (std::size_t i = 0; i < n; ++i) vw = vw + k.mul(v[i], gw[i]);
  vw = k.reduce(vw);
  int sg = k.sign_of(vw);
  if (sg == 0) throw std::logic_error("(v, w) = 0");
  if (sg < 0) {
    for (auto& e : v) e = Rat(-1) * e;
    vw = Rat(-1) * vw;
  }
  std::vector<RatPoly> gv = gram_times(k, l.gram(), v);
  return EigenPair{std::move(k), std::move(v), std::move(w), std::move(gv), std::move(gw), std::move(vw)};
}

int crossing_sign(EigenPair& e, const IntVector& r) {
  int a = e.field.sign_of(pairing(r, e.gv));
  if (a == 0) return 0;
  int b = e.field.sign_of(pairing(r, e.gw));
  return a * b;
}

IntVector test_vector(const Lattice& l, const IntMatrix& f, const EigenPair& e, std::uint64_t seed, int start_log2,
                      int max_tries) {
  std::size_t n = l.rank();
  std::vector<long double> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = e.field.approx(e.v[i]) + e.field.approx(e.w[i]);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> small(-2, 2);
  for (int t = 0; t < max_tries; ++t) {
    long double scale = std::ldexp(1.0L, start_log2 + t / 4);
    IntVector h(n);
    for (std::size_t i = 0; i < n; ++i) {
      long double x = std::floor(scale * s[i]);
      h[i] = Int(static_cast<long>(x)) + small(rng);
    }
    if (l.norm(h) <= 0) continue;
    Int hfh = l.inner(h, f * h);
    if (hfh < 0) throw PreconditionError("f does not preserve the positive cone");
    if (hfh > 0) return h;
  }
  throw BudgetExhausted("test_vector: no h with (h, h) > 0 found");
}

std::vector<std::pair<Int, Int>> crossing_bound_set(const Int& x, const Int& y) {
  if (x <= 0 || y <= 0) throw PreconditionError("crossing_bound_set needs x, y > 0");
  std::vector<std::pair<Int, Int>> out;
  Int rhs = 2 * y * y - 2 * x * x;
  if (rhs < 0) return out;
  // x a^2 <= x(a^2 + b^2) - 2aby <= rhs since ab < 0
  Int amax = sqrt(Int(rhs / x)) + 1;
  for (Int a = 1; a <= amax; ++a)
    for (Int b = -1; -b <= amax; --b) {
      Int lhs = x * (a * a + b * b) - 2 * a * b * y;
      if (lhs <= rhs) out.emplace_back(a, b);
    }
  return out;
}

ObstructionSets obstruction_sets(const Lattice& l, const IntMatrix& f, const IntVector& h, Budget& budget) {
  Int x = l.norm(h);
  IntVector fh = f * h;
  Int y = l.inner(h, fh);
  if (x <= 0 || y <= 0) throw PreconditionError("obstruction_sets needs (h,h) > 0 and (h, f h) > 0");
  ObstructionSets out;
  for (const auto& r : roots_in_hyperplane(l, h, budget)) out.rh.push_back(to_int(r));
  out.a_prime = crossing_bound_set(x, y);
  std::set<IntVector> seen;
  for (const auto& r : out.rh) seen.insert(r);
  for (const auto& [a, b] : out.a_prime) {
    IntVector hp(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) hp[i] = -b * h[i] + a * fh[i];
    for (const auto& r0 : roots_in_hyperplane(l, hp, budget)) {
      IntVector r = to_int(r0);
      IntVector nr = r;
      for (auto& c : nr) c = -c;
      if (seen.count(r) || seen.count(nr)) continue;
      seen.insert(r);
      out.sh.push_back(r);
    }
  }
  return out;
}

namespace {

// Basis change x_old = T^T x_new; f_new = T^-T f T^T.
struct Frame {
  Lattice l;
  IntMatrix f;
  IntMatrix t;
  bool identity = true;
  IntVector to_old(const IntVector& c) const { return identity ? c : t.transpose() * c; }
  IntVector to_new(const IntVector& x) const {
    if (identity) return x;
    auto c = express_in_basis(t, x);
    if (!c) throw std::logic_error("frame change is not unimodular");
    return *c;
  }
};

// LLL against the majorant 2 (x, h0)(y, h0) / (h0, h0) - (x, y) with h0 ~ v + w.
Frame majorant_frame(const Lattice& l, const IntMatrix& f, const EigenPair& e) {
  std::size_t n = l.rank();
  Frame fr{l, f, IntMatrix::identity(n), true};
  std::vector<long double> h0(n), gh(n, 0);
  for (std::size_t i = 0; i < n; ++i) h0[i] = e.field.approx(e.v[i]) + e.field.approx(e.w[i]);
  long double hh = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) gh[i] += l.gram()(i, j).get_d() * h0[j];
    hh += h0[i] * gh[i];
  }
  if (!(hh > 0)) return fr;
  std::vector<long double> m(n * n);
  long double top = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      m[i * n + j] = 2 * gh[i] * gh[j] / hh - l.gram()(i, j).get_d();
      top = std::max(top, std::fabs(m[i * n + j]));
    }
  long double scale = std::ldexp(1.0L, 40) / top;
  IntMatrix mi(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) mi(i, j) = mi(j, i) = Int(static_cast<long>(std::llround(m[i * n + j] * scale)));
  if (!Lattice(mi).is_positive_definite()) return fr;
  LllResult red = lll_reduce(mi);
  IntMatrix tt = red.transform.transpose();
  RatMatrix fnew = inverse(tt) * to_rat(f) * to_rat(tt);
  IntMatrix fi(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (fnew(i, j).get_den() != 1) return fr;
      fi(i, j) = fnew(i, j).get_num();
    }
  fr.l = Lattice(red.transform * l.gram() * tt, l.label());
  fr.f = std::move(fi);
  fr.t = red.transform;
  fr.identity = false;
  return fr;
}

}  // namespace

PositivityVerdict positivity_check(const Lattice& l, const IntMatrix& f, const std::optional<IntVector>& h0,
                                   Budget& budget, std::uint64_t seed) {
  auto sig = l.signature();
  if (sig.positive != 1 || sig.zero != 0) throw PreconditionError("positivity needs a hyperbolic lattice");
  require_isometry(l, f);
  PositivityVerdict out;
  SalemSplit sp = salem_split(f);
  out.salem = sp.salem;
  out.c0 = sp.c0;
  // step 2
  auto cyc = cyclic_roots(l, f, budget);
  out.cyclic_count = cyc.size();
  if (!cyc.empty()) {
    out.status = PositivityVerdict::Status::NotPositive;
    out.witness_kind = PositivityVerdict::Witness::Cyclic;
    out.witness = cyc.front();
    out.period = cyclic_period(f, cyc.front());
    out.step = 2;
    return out;
  }
  // steps 3-4, in a reduced basis so that small h stay close to v + w
  Frame fr = majorant_frame(l, f, salem_eigenpair(l, f));
  EigenPair e = salem_eigenpair(fr.l, fr.f);
  IntVector h = h0 ? fr.to_new(*h0) : test_vector(fr.l, fr.f, e, seed);
  out.h = fr.to_old(h);
  out.hh = fr.l.norm(h);
  IntVector fh = fr.f * h;
  out.hfh = fr.l.inner(h, fh);
  if (out.hh <= 0) throw PreconditionError("supplied h has (h, h) <= 0");
  if (out.hfh < 0) throw PreconditionError("f does not preserve the positive cone");
  auto crossing = [&](const IntVector& r, int step) {
    if (crossing_sign(e, r) >= 0) return false;
    out.status = PositivityVerdict::Status::NotPositive;
    out.witness_kind = PositivityVerdict::Witness::SignCrossing;
    out.witness = fr.to_old(r);
    out.step = step;
    return true;
  };
  // steps 5-6
  for (const auto& r0 : roots_in_hyperplane(fr.l, h, budget)) {
    IntVector r = to_int(r0);
    out.rh.push_back(fr.to_old(r));
    if (crossing(r, 6)) return out;
  }
  // steps 7-9
  out.a_prime = crossing_bound_set(out.hh, out.hfh);
  for (const auto& [a, b] : out.a_prime) {
    IntVector hp(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) hp[i] = -b * h[i] + a * fh[i];
    for (const auto& r0 : roots_in_hyperplane(fr.l, hp, budget)) {
      ++out.sh_count;
      if (crossing(to_int(r0), 9)) return out;
    }
  }
  out.step = 9;
  return out;
}

const char* to_string(PositivityVerdict::Status s) {
  return s == PositivityVerdict::Status::Positive ? "Positive" : "NotPositive";
}

const char* to_string(PositivityVerdict::Witness w) {
  switch (w) {
    case PositivityVerdict::Witness::Cyclic: return "cyclic";
    case PositivityVerdict::Witness::SignCrossing: return "sign-crossing";
    default: return "none";
  }
}

}  // namespace salemforge
