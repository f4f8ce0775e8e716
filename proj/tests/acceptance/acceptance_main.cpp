// Acceptance run: one PASS/FAIL line per criterion, exit code 1 if any criterion fails.

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "properties.hpp"
#include "salemforge/enriques/quadruple.hpp"
#include "salemforge/enriques/ruleout.hpp"
#include "salemforge/enriques/tables.hpp"
#include "salemforge/enriques/tau8.hpp"
#include "salemforge/exactalg/salem.hpp"
#include "salemforge/isom/genus.hpp"
#include "salemforge/isom/isometry.hpp"
#include "salemforge/lattice/enumerate.hpp"
#include "salemforge/lattice/glue.hpp"
#include "salemforge/positivity/positivity.hpp"
#include "salemforge/twistglue/constraints.hpp"
#include "salemforge/twistglue/principal.hpp"

using namespace salemforge;

namespace {

const std::string kData = SALEMFORGE_DATA_DIR;

// Collects failed checks of one criterion.
class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) failed_.push_back(what);
  }
  bool ok() const { return failed_.empty(); }
  std::string failures() const {
    std::string s;
    for (const auto& f : failed_) s += (s.empty() ? "" : "; ") + f;
    return s;
  }

 private:
  std::vector<std::string> failed_;
};

int failures = 0;

void criterion(int n, const std::string& name, double limit_seconds, const std::function<void(Checks&)>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Checks c;
  try {
    body(c);
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.expect(s < limit_seconds, "runtime " + std::to_string(s) + " s over the " + std::to_string(limit_seconds) + " s bound");
  std::ostringstream line;
  line.setf(std::ios::fixed);
  line.precision(2);
  line << (c.ok() ? "PASS" : "FAIL") << " " << n << " " << name << " (" << s << " s)";
  if (!c.ok()) {
    line << ": " << c.failures();
    ++failures;
  }
  std::cout << line.str() << std::endl;
}

void table_checks(Checks& c, int n, std::size_t rows) {
  TableReport r = reproduce_table(n, kData);
  c.expect(r.rows.size() == rows, "table " + std::to_string(n) + " has " + std::to_string(r.rows.size()) + " rows");
  for (const auto& row : r.rows) c.expect(row.match, row.key + ": " + row.detail);
}

void props_check(Checks& c, const props::PropertyResult& r, int instances) {
  c.expect(r.ok(), r.name + ": " + r.first_failure);
  c.expect(r.instances == instances, r.name + " ran " + std::to_string(r.instances) + " instances");
}

}  // namespace

int main() {
  Budget& budget = unlimited_budget();

  criterion(1, "Table 2 mod-2 factorizations", 1.0, [](Checks& c) { table_checks(c, 2, 26); });

  criterion(2, "Table 1 Salem numbers", 5.0, [](Checks& c) { table_checks(c, 1, 8); });

  criterion(3, "tau_8 stage A", 60.0, [&](Checks& c) {
    Tau8StageA a = tau8_stage_a(budget);
    const Lattice& l0 = a.principal.lattice;
    c.expect(l0.is_even(), "L0 even");
    c.expect(l0.signature().positive == 3 && l0.signature().negative == 3, "L0 signature (3,3)");
    c.expect(abs(l0.det()) == 4, "|det L0| = 4");
    c.expect(invariants_string(GlueGroup(l0).invariants()) == "(Z/2)^2", "G(L0) = (Z/2)^2");
    const Lattice& la = a.twisted.lattice;
    c.expect(la.signature().positive == 1 && la.signature().negative == 5, "L0(a) signature (1,5)");
    c.expect(invariants_string(GlueGroup(la).invariants()) == "(Z/2)^2", "G(L0(a)) = (Z/2)^2");
    c.expect(a.twisted_glue_order == 2, "glue action order 2");
    c.expect(a.d4_usable == 1, "unique usable D4 class");
    c.expect(a.glued_class == "II_{1,9}", "glued lattice is II_{1,9}");
    c.expect(a.fplus_glue_order == 8, "glue action order of f+ is 8");
  });

  criterion(4, "tau_8 stage B", 60.0, [&](Checks& c) {
    PLattice l2 = tau8_stage_b();
    c.expect(invariants_string(GlueGroup(l2.lattice).invariants()) == "(Z/4)^4", "glue (Z/4)^4");
    Lattice i22 = rescale(lattice_I(2, 2), 4);
    auto w = find_isometry_box(l2.lattice, i22, 2, budget);
    c.expect(w.has_value(), "isometric to I_{2,2}(4)");
    if (w) c.expect(w->transpose() * i22.gram() * *w == l2.lattice.gram(), "witness transports the form");
  });

  criterion(5, "tau_8 end to end", 7200.0, [&](Checks& c) {
    Tau8Config cfg;
    cfg.progress = [](const io::Json& e) { std::cerr << e.dump() << std::endl; };
    Tau8Result r = tau8_pipeline(cfg, budget);
    QuadrupleReport rep = verify_quadruple(r.quadruple, budget);
    c.expect(rep.conditions.size() == 8, "eight conditions");
    c.expect(rep.passed(), "verify_quadruple passes");
    c.expect(rep.hh > 0, "(h, h) > 0");
    c.expect(rep.rh == 0 && rep.sh == 0, "R_h and S_h empty");
    c.expect(verify_quadruple(sign_flip(r.quadruple), budget).passed(), "sign-flipped quadruple passes");
  });

  criterion(6, "tau_1 rule-out core", 1800.0, [&](Checks& c) {
    RuleOutConfig cfg;
    cfg.data_dir = kData;
    RuleOutTrace t = rule_out(1, cfg, budget);
    c.expect(t.status == RuleOutTrace::Status::RuledOut, "RULED_OUT");
    c.expect(t.axiom_steps() == 0, "no AXIOM step");
    const TraceStep* s4 = nullptr;
    const TraceStep* s5 = nullptr;
    const TraceStep* s6 = nullptr;
    for (const auto& s : t.steps) {
      if (s.stage == 4) s4 = &s;
      if (s.stage == 5) s5 = &s;
      if (s.stage == 6) s6 = &s;
    }
    c.expect(s4 && s5 && s6, "stages 4 to 6 present");
    if (!(s4 && s5 && s6)) return;
    const auto& g = s4->data["branch_(0,6)"];
    c.expect(g["genus_classes"] == 1 && g["genus_complete"] == true, "L1(1/2) genus is {A6}");
    c.expect(s5->data["classes"] == 1 && s5->data["complete"] == true, "one Phi_7 class on A6(2)");
    const auto& per = s6->data["per_twist"];
    c.expect(per.size() == 4, "4 classes in R");
    std::size_t total = 0;
    for (const auto& tw : per) {
      c.expect(tw["maps"] == 7 && tw["complete"] == true, "7 gluings for twist " + tw["twist"].dump());
      for (const auto& v : tw["verdicts"]) {
        ++total;
        c.expect(v["status"] == "NotPositive", "candidate not positive");
        c.expect(!v["witness"].is_null(), "concrete witness");
      }
    }
    c.expect(total == 28, "28 glued candidates");
  });

  criterion(7, "tau_3 rule-out", 300.0, [&](Checks& c) {
    RuleOutConfig cfg;
    cfg.data_dir = kData;
    RuleOutTrace t = rule_out(3, cfg, budget);
    bool phi15 = false, bookkeeping = false, fired = false;
    for (const auto& s : t.steps) {
      if (s.stage == 3) phi15 = s.data["C1"] == 15;
      if (s.stage == 4)
        bookkeeping = s.data["L1_half"] == "E8" && s.data["L1_plus_L2_has_invariants_of_U_E10_2"] == true;
      if (s.stage == 5) fired = s.kind == "AXIOM";
    }
    c.expect(phi15, "Phi_15 kernel branch");
    c.expect(bookkeeping, "L1 ~ E8(2), L2 ~ U + U(2) invariants");
    c.expect(fired, "obstruction fires");
    c.expect(t.status == RuleOutTrace::Status::RuledOut, "RULED_OUT");
    c.expect(t.axiom_steps() == 1, "exactly one AXIOM step");
  });

  criterion(8, "rank-8 genus check", 1800.0, [&](Checks& c) {
    Lattice seed = theorem46_genus_seed();
    c.expect(has_theorem46_invariants(seed), "seed has the stated invariants");
    GenusResult g = genus_explore(seed, 3, 10, budget);
    c.expect(g.complete, "exploration complete");
    c.expect(g.classes.size() == 2, std::to_string(g.classes.size()) + " classes");
    for (const auto& cls : g.classes) {
      c.expect(has_theorem46_invariants(cls), "class keeps the invariants");
      c.expect(!roots(cls, budget).empty(), "class has roots");
    }
  });

  criterion(9, "property suites", 600.0, [&](Checks& c) {
    props_check(c, props::smith_suite(), 200);
    props_check(c, props::cayley_hamilton_suite(), 200);
    props_check(c, props::signature_suite(), 200);
    props_check(c, props::glue_det_suite(50), 50);
    props_check(c, props::short_vector_suite(50), 50);
    for (const auto& rc : props::root_counts())
      c.expect(rc.library == rc.expected && rc.oracle == rc.expected, "root count " + rc.name);
    auto cases = props::regression_cases(kData, budget);
    c.expect(cases.size() == 30, "30 regression cases");
    auto inv = props::positivity_invariance(cases, budget);
    c.expect(inv.ok(), inv.name + ": " + inv.first_failure);
  });

  criterion(10, "feasibility arithmetic", 10.0, [](Checks& c) {
    c.expect(feasible_primes(salem_candidate(5)) == std::vector<std::uint64_t>{2, 5}, "feasible_primes(S5) = {2,5}");
    IntPoly s3 = salem_candidate(3);
    c.expect(abs(resultant(cyclotomic(3), s3)) == 1, "res(Phi_3, S3) = +-1");
    c.expect(abs(resultant(cyclotomic(6), s3)) == 1, "res(Phi_6, S3) = +-1");
    c.expect(order_dimension_D(1) == 0 && order_dimension_D(2) == 1, "D(1) = 0, D(2) = 1");
    for (unsigned n = 1; n <= 60; ++n) {
      // formula: sum of phi(p^a) over the prime powers of n, minus 1 when n = 2 mod 4 and n > 2
      unsigned f = 0, m = n;
      for (unsigned p = 2; p <= m; ++p) {
        if (m % p) continue;
        unsigned q = 1;
        while (m % p == 0) m /= p, q *= p;
        f += q - q / p;
      }
      if (n % 4 == 2 && n > 2) f -= 1;
      c.expect(order_dimension_D(n) == f, "D(" + std::to_string(n) + ") formula");
      if (n > 12) continue;
      // brute force: an order-n matrix realizing the minimum, from the cheapest divisor set with lcm n
      unsigned best = oracle::lcm_dimension(n);
      c.expect(order_dimension_D(n) == best, "D(" + std::to_string(n) + ") brute force");
      if (n == 1) continue;
      std::vector<unsigned> divs;
      for (unsigned d = 2; d <= n; ++d)
        if (n % d == 0) divs.push_back(d);
      bool realized = false;
      for (unsigned mask = 1; mask < (1u << divs.size()) && !realized; ++mask) {
        IntPoly p{1};
        for (std::size_t i = 0; i < divs.size(); ++i)
          if ((mask >> i) & 1u) p = p * cyclotomic(divs[i]);
        if (static_cast<unsigned>(p.degree()) != best) continue;
        auto o = matrix_order(companion_matrix(p));
        realized = o && *o == n;
      }
      c.expect(realized, "order-" + std::to_string(n) + " matrix of size D(n)");
    }
  });

  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " criterion(s) failed") << std::endl;
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
