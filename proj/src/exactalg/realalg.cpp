#include "salemforge/exactalg/realalg.hpp"

#include <algorithm>
#include <cmath>

namespace salemforge {

int sign(const Rat& x) { return sgn(x); }

SturmSequence::SturmSequence(const IntPoly& p) {
  if (p.is_zero()) throw PreconditionError("Sturm sequence of zero polynomial");
  seq_.push_back(to_rat(p));
  seq_.push_back(to_rat(p.derivative()));
  while (!seq_.back().is_zero()) {
    RatPoly r = divmod(seq_[seq_.size() - 2], seq_.back()).second;
    seq_.push_back(-r);
  }
  seq_.pop_back();
  if (seq_.back().degree() > 0) throw PreconditionError("Sturm sequence requires a squarefree polynomial");
}

int SturmSequence::sign_changes(const Rat& x) const {
  int changes = 0, last = 0;
  for (const auto& q : seq_) {
    int s = sgn(q.eval(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

int SturmSequence::count_roots(const Rat& a, const Rat& b) const {
  return sign_changes(a) - sign_changes(b);
}

int SturmSequence::count_all_real_roots() const {
  int at_minus = 0, at_plus = 0, lm = 0, lp = 0;
  for (const auto& q : seq_) {
    int d = q.degree();
    int sp = sgn(q.leading());
    int sm = (d % 2) ? -sp : sp;
    if (lp != 0 && sp != lp) ++at_plus;
    if (lm != 0 && sm != lm) ++at_minus;
    lp = sp;
    lm = sm;
  }
  return at_minus - at_plus;
}

Rat cauchy_bound(const IntPoly& p) {
  Rat m = 0;
  for (int i = 0; i < p.degree(); ++i) {
    Rat r = Rat(abs(p.coeff(i))) / Rat(abs(p.leading()));
    if (r > m) m = r;
  }
  return m + 1;
}

std::vector<RatInterval> isolate_real_roots(const IntPoly& p) {
  SturmSequence s(p);
  Rat b = cauchy_bound(p);
  std::vector<RatInterval> out;
  std::vector<RatInterval> stack{{-b, b}};
  while (!stack.empty()) {
    RatInterval iv = stack.back();
    stack.pop_back();
    int n = s.count_roots(iv.lo, iv.hi);
    if (n == 0) continue;
    if (n == 1) {
      out.push_back(iv);
      continue;
    }
    Rat mid = (iv.lo + iv.hi) / 2;
    stack.push_back({mid, iv.hi});
    stack.push_back({iv.lo, mid});
  }
  std::sort(out.begin(), out.end(), [](const RatInterval& a, const RatInterval& c) { return a.lo < c.lo; });
  return out;
}

RealAlgebraic::RealAlgebraic(IntPoly p, RatInterval iv) : p_(std::move(p)), iv_(std::move(iv)) {}

void RealAlgebraic::refine(const Rat& w) {
  while (iv_.width() > w) {
    Rat mid = (iv_.lo + iv_.hi) / 2;
    int sm = sgn(p_.eval(mid));
    if (sm == 0) {
      // exact rational root: any subinterval around mid still isolates it
      Rat lo = mid - w / 2;
      if (lo > iv_.lo) iv_.lo = lo;
      iv_.hi = mid;
      return;
    }
    int sh = sgn(p_.eval(iv_.hi));
    if (sh == 0 || sm == sh) {
      // root is in (lo, mid] unless hi itself is the root
      if (sh == 0) {
        iv_.lo = mid;
      } else {
        iv_.hi = mid;
      }
    } else {
      iv_.lo = mid;
    }
  }
}

double RealAlgebraic::approx() const {
  Rat mid = (iv_.lo + iv_.hi) / 2;
  return mid.get_d();
}

long double RealAlgebraic::approx_ld() const {
  Rat mid = (iv_.lo + iv_.hi) / 2;
  // long double via two doubles is enough once the interval is narrow
  double hi = mid.get_d();
  Rat rest = mid - Rat(hi);
  return static_cast<long double>(hi) + static_cast<long double>(rest.get_d());
}

RatInterval eval_interval(const RatPoly& p, const RatInterval& x) {
  RatInterval r{0, 0};
  const auto& c = p.coefficients();
  for (std::size_t i = c.size(); i-- > 0;) {
    // r = r * x + c_i
    Rat a = r.lo * x.lo, b = r.lo * x.hi, d = r.hi * x.lo, e = r.hi * x.hi;
    Rat lo = std::min({a, b, d, e}), hi = std::max({a, b, d, e});
    r = {lo + c[i], hi + c[i]};
  }
  return r;
}

RealNumberField::RealNumberField(IntPoly minpoly, RealAlgebraic embedding)
    : m_(std::move(minpoly)), mq_(to_rat(m_)), tau_(std::move(embedding)) {
  if (!m_.is_monic()) throw PreconditionError("field modulus must be monic");
}

RatPoly RealNumberField::reduce(const RatPoly& a) const { return divmod(a, mq_).second; }

RatPoly RealNumberField::mul(const RatPoly& a, const RatPoly& b) const { return reduce(a * b); }

RatPoly RealNumberField::inv(const RatPoly& a0) const {
  RatPoly a = reduce(a0);
  if (a.is_zero()) throw PreconditionError("inverse of zero field element");
  // extended Euclid: s*a + t*m = g
  RatPoly r0 = mq_, r1 = a, s0, s1 = RatPoly::constant(Rat(1));
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    RatPoly s2 = s0 - q * s1;
    r0 = r1;
    r1 = r;
    s0 = s1;
    s1 = s2;
  }
  if (r0.degree() != 0) throw PreconditionError("field modulus is not irreducible");
  return reduce((1 / r0.leading()) * s0);
}

int RealNumberField::sign_of(const RatPoly& a0) {
  RatPoly a = reduce(a0);
  if (a.is_zero()) return 0;
  for (;;) {
    RatInterval v = eval_interval(a, tau_.interval());
    if (v.lo > 0) return 1;
    if (v.hi < 0) return -1;
    tau_.refine(tau_.interval().width() / 1024);
  }
}

long double RealNumberField::approx(const RatPoly& a) const {
  long double t = tau_.approx_ld(), r = 0;
  const auto& c = a.coefficients();
  for (std::size_t i = c.size(); i-- > 0;) r = r * t + static_cast<long double>(c[i].get_d());
  return r;
}

}  // namespace salemforge
