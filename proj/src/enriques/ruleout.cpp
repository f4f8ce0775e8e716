#include "salemforge/enriques/ruleout.hpp"

#include <chrono>
#include <functional>
#include <set>

#include "salemforge/exactalg/salem.hpp"
#include "salemforge/isom/charpoly_search.hpp"
#include "salemforge/isom/genus.hpp"
#include "salemforge/lattice/enumerate.hpp"
#include "salemforge/positivity/positivity.hpp"
#include "salemforge/twistglue/constraints.hpp"
#include "salemforge/twistglue/principal.hpp"

namespace salemforge {

namespace {

using Clock = std::chrono::steady_clock;

Gf2Poly one_plus_x_squared() { return Gf2Poly(3) * Gf2Poly(3); }

std::vector<CyclotomicProduct> cyclotomic_products(int degree) {
  std::vector<unsigned> pool = cyclotomic_indices_up_to_degree(static_cast<unsigned>(std::max(degree, 1)));
  std::vector<CyclotomicProduct> out;
  std::vector<unsigned> chosen;
  std::function<void(std::size_t, int, IntPoly)> rec = [&](std::size_t from, int left, IntPoly prod) {
    if (left == 0) {
      out.push_back({chosen, prod});
      return;
    }
    for (std::size_t i = from; i < pool.size(); ++i) {
      IntPoly c = cyclotomic(pool[i]);
      if (c.degree() > left) continue;
      chosen.push_back(pool[i]);
      rec(i, left - c.degree(), prod * c);
      chosen.pop_back();
    }
  };
  rec(0, degree, IntPoly{1});
  return out;
}

io::Json indices_json(const std::vector<unsigned>& v) {
  io::Json a = io::Json::array();
  for (auto k : v) a.push_back(k);
  return a;
}

IntPoly negate_variable(const IntPoly& p) {
  std::vector<Int> c = p.coefficients();
  for (std::size_t i = 1; i < c.size(); i += 2) c[i] = -c[i];
  IntPoly q(std::move(c));
  return q.leading() < 0 ? IntPoly(std::vector<Int>{}) - q : q;
}

std::string sig_text(int p, int n) { return "(" + std::to_string(p) + "," + std::to_string(n) + ")"; }

// Preset kernel polynomials C1 (cyclotomic index) for the implemented endgames.
unsigned preset_c1(int tau) {
  switch (tau) {
    case 1: return 7;
    case 3: return 15;
    default: return 0;
  }
}

class Runner {
 public:
  Runner(int tau, const RuleOutConfig& cfg, Budget& budget) : cfg_(cfg), budget_(budget) {
    trace_.tau = tau;
    trace_.seed = cfg.seed;
  }

  RuleOutTrace run();

 private:
  bool allowed(int stage) const { return stage <= cfg_.max_stage; }
  void step(int stage, std::string name, std::string kind, std::string summary, io::Json data) {
    TraceStep s{stage, std::move(name), std::move(kind), std::move(summary), std::move(data),
                std::chrono::duration<double>(Clock::now() - t_).count()};
    if (cfg_.progress) cfg_.progress(s);
    trace_.steps.push_back(std::move(s));
    t_ = Clock::now();
  }
  RuleOutTrace stop(const std::string& why) {
    trace_.status = RuleOutTrace::Status::Inconclusive;
    trace_.reason = why;
    step(0, "stop", "STOP", why, io::Json::object());
    return trace_;
  }
  RuleOutTrace done(const std::string& why) {
    trace_.status = RuleOutTrace::Status::RuledOut;
    trace_.reason = why;
    return trace_;
  }

  RuleOutTrace endgame_tau1();
  RuleOutTrace endgame_tau3();

  const RuleOutConfig& cfg_;
  Budget& budget_;
  RuleOutTrace trace_;
  Clock::time_point t_ = Clock::now();

  IntPoly s_;
  std::vector<PLattice> r_;  // E10 twists (degree-10 Salem factors)
  IntPoly c1_;
  int k1_ = 0, k2_ = 0, l1_ = 0, l2_ = 0;
  bool unit_res_ = true;  // res(C1, C2) = +-1 on every branch
  std::set<std::string> c2_;
};

RuleOutTrace Runner::run() {
  s_ = salem_candidate(trace_.tau);
  SalemCheck sc = is_salem(s_);
  if (!sc.salem) throw std::logic_error("candidate polynomial is not Salem: " + sc.reason);

  // stage 1: characteristic polynomials of f+ (and the twists when S fills E10)
  PlusCharpolys plus = plus_charpolys(s_);
  io::Json d1;
  d1["salem"] = io::to_json(s_);
  d1["feasible_primes"] = feasible_primes(s_);
  io::Json kept = io::Json::array(), dropped = io::Json::array();
  for (const auto& c : plus.kept) kept.push_back(indices_json(c.indices));
  for (const auto& c : plus.dropped) dropped.push_back(indices_json(c.indices));
  d1["kept_C"] = kept;
  d1["dropped_C_unimodular_split"] = dropped;
  if (s_.degree() == 10) {
    std::string path = io::units_path(cfg_.data_dir, s_);
    io::UnitData ud = io::units_from_json(io::read_file(path));
    if (ud.polynomial != s_) throw PreconditionError(path + " is for a different polynomial");
    if (ud.representatives.empty()) throw PreconditionError(path + " has no unit representatives");
    PLattice l0 = principal_lattice(s_);
    io::Json tw = io::Json::array();
    for (std::size_t m = 0; m < ud.representatives.size(); ++m) {
      PLattice t = twist(l0, ud.representatives[m]);
      Signature sg = t.lattice.signature();
      if (sg.positive != 1 || !t.lattice.is_even() || abs(t.lattice.det()) != 1) continue;
      r_.push_back(t);
      tw.push_back({{"mask", m}, {"unit", io::to_json(ud.representatives[m])}});
    }
    d1["units_file"] = path;
    d1["units_source"] = ud.source;
    d1["twists_E10"] = tw;
    step(1, "R", "COMPUTED",
         std::to_string(r_.size()) + " twists of the principal lattice are even unimodular of signature (1,9)", d1);
  } else {
    step(1, "R", "COMPUTED", std::to_string(plus.kept.size()) + " possible complements C of S in chi_{f+}", d1);
  }
  if (!allowed(2)) return stop("stopped after stage 1");

  // stage 2: mod-2 classes and finite-order candidates for chi_{f-}
  std::vector<CyclotomicProduct> cands;
  io::Json d2;
  io::Json res2 = io::Json::array();
  for (const auto& r : plus.residues) {
    res2.push_back(r.to_string());
    for (auto& c : finite_order_charpoly_candidates(one_plus_x_squared() * r, 12)) cands.push_back(c);
  }
  d2["F"] = res2;
  io::Json cj = io::Json::array();
  for (const auto& c : cands) cj.push_back(indices_json(c.indices));
  d2["chi_minus_candidates"] = cj;
  step(2, "F", "COMPUTED",
       std::to_string(plus.residues.size()) + " class(es) mod 2, " + std::to_string(cands.size()) +
           " cyclotomic products of degree 12",
       d2);
  if (!allowed(3)) return stop("stopped after stage 2");

  // stage 3: kernel split for the preset C1
  unsigned c1 = preset_c1(trace_.tau);
  if (c1 == 0) return stop("no kernel polynomial C1 and endgame implemented for tau_" + std::to_string(trace_.tau));
  c1_ = cyclotomic(c1);
  io::Json d3;
  d3["C1"] = c1;
  io::Json branches = io::Json::array();
  bool odd = true;
  for (const auto& c : cands) {
    IntPoly chi = c.poly;
    bool flipped = false;
    if (!divides(c1_, chi)) {
      chi = negate_variable(chi);
      flipped = true;
      if (!divides(c1_, chi)) return stop("candidate " + c.poly.to_string() + " has no Phi_" + std::to_string(c1) + " factor up to sign");
    }
    IntPoly c2 = exact_div(chi, c1_);
    Int res = resultant(c1_, c2);
    odd = odd && mod(res, Int(2)) != 0;
    unit_res_ = unit_res_ && abs(res) == 1;
    c2_.insert(c2.to_string());
    branches.push_back({{"chi", indices_json(c.indices)}, {"flipped", flipped}, {"C2", io::to_json(c2)},
                        {"res", res.get_str()}});
  }
  if (!odd) return stop("2 divides res(C1, C2) on some branch");
  k1_ = c1_.degree();
  k2_ = 12 - k1_;
  std::vector<int> lens = kernel_length_options(c1_, k1_, k2_);
  if (lens.size() != 1) return stop("length of G(L1)_2 is not determined");
  l1_ = lens[0];
  l2_ = 10 - l1_;
  d3["branches"] = branches;
  d3["rank_L1"] = k1_;
  d3["rank_L2"] = k2_;
  d3["length_L1"] = l1_;
  d3["length_L2"] = l2_;
  step(3, "kernel split", "COMPUTED",
       "Phi_" + std::to_string(c1) + " divides chi_{f-} on every branch (after f- -> -f-); rank L1 = " +
           std::to_string(k1_) + ", G(L1)_2 = F_2^" + std::to_string(l1_) + ", G(L2)_2 = F_2^" + std::to_string(l2_),
       d3);
  if (!allowed(4)) return stop("stopped after stage 3");
  return trace_.tau == 1 ? endgame_tau1() : endgame_tau3();
}

RuleOutTrace Runner::endgame_tau3() {
  // L1 = Ker Phi_15(f-) with G(L1) = F_2^8, b(x, x) = 0: L1(1/2) is even unimodular of rank 8.
  io::Json d4;
  io::Json sigs = io::Json::array();
  for (int p = 0; p <= 2; p += 2) {
    int n = k1_ - p;
    bool ok = ((p - n) % 8 + 8) % 8 == 0;
    sigs.push_back({{"signature", sig_text(p, n)}, {"even_unimodular_possible", ok}});
  }
  Lattice e8 = lattice_E(8);
  auto cls = classify_even_unimodular(e8);
  Lattice l1 = rescale(e8, 2);
  l1.set_label("E8(2)");
  Lattice l2 = direct_sum(lattice_U(1), lattice_U(2));
  l2.set_label("U+U(2)");
  Lattice whole = direct_sum(l1, l2);
  d4["L1_half_signatures"] = sigs;
  d4["L1_half"] = cls ? cls->name : "?";
  d4["L1_invariants"] = invariants_string(GlueGroup(l1).invariants());
  d4["L2_invariants"] = invariants_string(GlueGroup(l2).invariants());
  d4["L2_signature"] = sig_text(2, k2_ - 2);
  d4["L1_plus_L2_has_invariants_of_U_E10_2"] = has_u_e10_2_invariants(whole);
  bool ok = unit_res_ && l1_ == k1_ && cls && cls->name == "E8" && has_u_e10_2_invariants(whole);
  if (!ok) return stop("kernel bookkeeping did not give E8(2) + (U + U(2))");
  step(4, "L1", "COMPUTED",
       "res(C1, C2) = +-1 on every branch so L- = L1 + L2; L1(1/2) even unimodular negative definite of rank 8, "
       "L1 = E8(2); L2 even of signature (2,2) with G = F_2^2 and b(x,x) = 0, the invariants of U + U(2)",
       d4);
  if (!allowed(5)) return stop("stopped after stage 4");
  AxiomCheck ax = obstruction_E8_UU2(l1, l2, budget_);
  io::Json d5{{"axiom", ax.axiom}, {"N_is_E8_2", ax.n_is_e8_2}, {"T_is_U_U2", ax.t_is_u_u2}, {"T_method", ax.t_method}};
  if (!ax.fires) return stop("obstruction predicate did not apply");
  step(5, "obstruction", "AXIOM", "N = E8(2), T = U + U(2): " + ax.axiom, d5);
  return done("every branch ends in the E8(2), U + U(2) obstruction");
}

RuleOutTrace Runner::endgame_tau1() {
  // stage 4: signature of L1 = Ker Phi_7(f-); the positive index is even (Phi_7 has no real roots)
  std::int64_t p = 7;
  Int det2 = Int(1) << static_cast<unsigned>(l2_);
  det2 *= p;
  bool forced = hermite_forces_roots(static_cast<std::size_t>(k2_), det2);
  Lattice a6 = lattice_A(6);
  GenusResult gen = genus_explore(a6, 3, 10, budget_);
  io::Json d4;
  d4["glue_shape_L1"] = "F_2^" + std::to_string(l1_) + " + F_7";
  d4["glue_shape_L2"] = "F_2^" + std::to_string(l2_) + " + F_7";
  d4["branch_(2,4)"] = {{"L2_rank", k2_}, {"L2_abs_det", det2.get_str()}, {"hermite_forces_roots", forced}};
  d4["branch_(0,6)"] = {{"L1_half", "even negative definite, rank 6, det 7"},
                        {"genus_classes", gen.classes.size()},
                        {"genus_complete", gen.complete},
                        {"aut_order", gen.aut_orders.empty() ? std::string("?") : gen.aut_orders[0].get_str()}};
  if (!forced) return stop("signature (2,4) branch is not closed by the Hermite bound");
  if (!gen.complete || gen.classes.size() != 1) return stop("genus of A6 is not a single class");
  step(4, "L1", "COMPUTED",
       "sig L1 = (2,4) puts L2 (negative definite, |det| " + det2.get_str() +
           ") inside T^perp, where the Hermite bound forces roots; so sig L1 = (0,6) and L1(1/2) lies in the "
           "one-class genus of A6: L1 = A6(2)",
       d4);
  if (!allowed(5)) return stop("stopped after stage 4");

  // stage 5: isometries of A6(2) with characteristic polynomial Phi_7
  Lattice l1 = rescale(a6, 2);
  l1.set_label("A6(2)");
  auto xs = isometries_with_charpoly(l1, cyclotomic(7), budget_);
  io::Json d5{{"classes", xs.classes.size()}, {"group_order", xs.group_order.get_str()}, {"complete", xs.complete}};
  if (!xs.complete) return stop("isometry search of A6(2) incomplete");
  step(5, "X", "COMPUTED", std::to_string(xs.classes.size()) + " conjugacy class(es) of Phi_7 isometries of A6(2)", d5);
  if (!allowed(6)) return stop("stopped after stage 5");

  // stage 6: gluings of (A6(2), f1) into each g(2), g in R, on the Sylow 2-subgroup, then positivity
  io::Json d6 = io::Json::array();
  std::size_t total = 0, positive = 0;
  for (std::size_t gi = 0; gi < r_.size(); ++gi) {
    Lattice lp = rescale(r_[gi].lattice, 2);
    for (const auto& x : xs.classes) {
      GluingOptions opt;
      opt.domain = GluingOptions::Domain::Sylow;
      opt.p = 2;
      auto gl = enumerate_gluings(l1, x.representative, lp, r_[gi].f, opt, budget_);
      io::Json verdicts = io::Json::array();
      for (const auto& m : gl.maps) {
        GluedLattice g = glue(l1, lp, m, x.representative, r_[gi].f);
        PositivityVerdict v = positivity_check(g.lattice, *g.f, std::nullopt, budget_, cfg_.seed);
        ++total;
        positive += v.positive();
        verdicts.push_back({{"status", to_string(v.status)},
                            {"witness_kind", to_string(v.witness_kind)},
                            {"witness", v.witness ? io::to_json(*v.witness) : io::Json()},
                            {"step", v.step}});
      }
      d6.push_back({{"twist", gi}, {"maps", gl.maps.size()}, {"complete", gl.complete}, {"verdicts", verdicts}});
    }
  }
  step(6, "glue + positivity", "COMPUTED",
       std::to_string(total) + " glued candidates, " + std::to_string(positive) + " positive", io::Json{{"per_twist", d6}});
  if (positive > 0) return stop("a positive candidate survived");
  return done("no gluing of A6(2) with any g(2), g in R, is positive");
}

}  // namespace

const std::vector<IntPoly>& salem_candidates() {
  static const std::vector<IntPoly> s{
      parse_poly("1 - x - x^4 + x^5 - x^6 - x^9 + x^10"), parse_poly("1 - x^2 - x^3 - x^4 + x^6"),
      parse_poly("1 - x - x^3 + x^4 - x^5 - x^7 + x^8"),  parse_poly("1 - x^2 - x^3 - x^5 - x^6 + x^8"),
      parse_poly("1 - x - x^3 - x^5 + x^6"),              parse_poly("1 - x - x^2 + x^5 - x^8 - x^9 + x^10"),
      parse_poly("1 - x - x^2 + x^3 - x^4 - x^5 + x^6"),  parse_poly("1 - x^2 - 2x^3 - x^4 + x^6")};
  return s;
}

IntPoly salem_candidate(int i) {
  if (i < 1 || i > 8) throw PreconditionError("tau index must be in 1..8");
  return salem_candidates()[static_cast<std::size_t>(i - 1)];
}

std::size_t RuleOutTrace::axiom_steps() const {
  std::size_t n = 0;
  for (const auto& s : steps) n += s.kind == "AXIOM";
  return n;
}

const char* to_string(RuleOutTrace::Status s) { return s == RuleOutTrace::Status::RuledOut ? "RULED_OUT" : "INCONCLUSIVE"; }

io::Json RuleOutTrace::to_json() const {
  io::Json j;
  j["tau"] = tau;
  j["status"] = to_string(status);
  j["reason"] = reason;
  j["seed"] = seed;
  j["axiom_steps"] = axiom_steps();
  io::Json st = io::Json::array();
  for (const auto& s : steps)
    st.push_back({{"stage", s.stage}, {"name", s.name}, {"kind", s.kind}, {"summary", s.summary},
                  {"seconds", s.seconds}, {"data", s.data}});
  j["steps"] = st;
  return j;
}

PlusCharpolys plus_charpolys(const IntPoly& s) {
  PlusCharpolys out;
  int d = s.degree();
  if (d > 10 || d < 2) throw PreconditionError("Salem factor degree must be in 2..10");
  std::set<std::uint64_t> seen;
  for (auto& c : cyclotomic_products(10 - d)) {
    bool unimodular_split = abs(resultant(s, c.poly)) == 1 && ((2 - d) % 8 + 8) % 8 != 0;
    if (unimodular_split) {
      out.dropped.push_back(c);
      continue;
    }
    Gf2Poly r = Gf2Poly::from_int_poly(s * c.poly);
    if (seen.insert(r.bits()).second) out.residues.push_back(r);
    out.kept.push_back(std::move(c));
  }
  return out;
}

std::vector<int> kernel_length_options(const IntPoly& c1, int rank1, int rank2) {
  std::vector<int> degs;
  for (const auto& f : mod2_factor(c1)) degs.push_back(f.factor.degree());
  std::vector<char> reach(static_cast<std::size_t>(rank1 + 1), 0);
  reach[0] = 1;
  for (int l = 1; l <= rank1; ++l)
    for (int dg : degs)
      if (dg <= l && reach[static_cast<std::size_t>(l - dg)]) reach[static_cast<std::size_t>(l)] = 1;
  std::vector<int> out;
  for (int l = 0; l <= rank1; ++l)
    if (reach[static_cast<std::size_t>(l)] && 10 - l <= rank2 && 10 - l >= 0) out.push_back(l);
  return out;
}

RuleOutTrace rule_out(int i, const RuleOutConfig& config, Budget& budget) {
  if (i < 1 || i > 7) throw PreconditionError("rule_out is defined for tau_1 .. tau_7");
  Runner r(i, config, budget);
  return r.run();
}

}  // namespace salemforge
