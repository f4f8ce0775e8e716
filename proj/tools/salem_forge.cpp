// salem-forge: command-line front end for the salemforge library.
// Exit codes: 0 result or verdict, 2 precondition error, 3 budget exhausted (INCONCLUSIVE).

#include <filesystem>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "salemforge/enriques/quadruple.hpp"
#include "salemforge/enriques/ruleout.hpp"
#include "salemforge/enriques/tables.hpp"
#include "salemforge/enriques/tau8.hpp"
#include "salemforge/exactalg/gf2poly.hpp"
#include "salemforge/exactalg/salem.hpp"
#include "salemforge/io/jsonio.hpp"
#include "salemforge/isom/autgroup.hpp"
#include "salemforge/isom/charpoly_search.hpp"
#include "salemforge/isom/genus.hpp"
#include "salemforge/isom/isometry.hpp"
#include "salemforge/lattice/enumerate.hpp"
#include "salemforge/positivity/positivity.hpp"
#include "salemforge/twistglue/principal.hpp"

using namespace salemforge;
using io::Json;

namespace {

struct Globals {
  std::uint64_t seed = 0x5A1E;
  std::uint64_t budget = 0;
  int threads = 0;
  bool json = false;
  std::string data_dir = SALEMFORGE_DATA_DIR;
};

// Machine payload and human summary built from the same object.
struct CommandResult {
  int code = 0;
  Json payload;
  std::string summary;
};

void progress(const Json& e) { std::cerr << e.dump() << std::endl; }

Json load_json(const std::string& arg) {
  if (std::filesystem::exists(arg)) return io::read_file(arg);
  try {
    return Json::parse(arg);
  } catch (const Json::parse_error&) {
    return Json(arg);  // a bare name such as E8
  }
}

Lattice load_lattice(const std::string& arg) {
  Json j = load_json(arg);
  if (j.is_object() && j.contains("lattice") && !j.contains("gram")) return io::lattice_from_json(j["lattice"]);
  return io::lattice_from_json(j);
}

IntMatrix load_matrix(const std::string& arg) {
  Json j = load_json(arg);
  if (j.is_object()) return io::matrix_from_json(j.at("matrix"));
  return io::matrix_from_json(j);
}

// A lattice with its isometry: a file {"lattice", "matrix"}, or a lattice plus a separate matrix.
std::pair<Lattice, IntMatrix> load_pair(const std::string& lattice, const std::string& isometry) {
  if (isometry.empty()) {
    Json j = load_json(lattice);
    if (!j.is_object() || !j.contains("matrix")) throw PreconditionError("an isometry is required");
    return io::isometry_from_json(j);
  }
  Lattice l = load_lattice(lattice);
  IntMatrix f = load_matrix(isometry);
  require_isometry(l, f);
  return {l, f};
}

std::string sig_string(const Signature& s) {
  return "(" + std::to_string(s.positive) + "," + std::to_string(s.negative) + ")";
}

Json sig_json(const Signature& s) { return Json::array({s.positive, s.negative}); }

Json factors_json(const std::vector<Gf2Factor>& fs) {
  Json a = Json::array();
  for (const auto& f : fs) a.push_back({f.factor.to_string(), f.multiplicity});
  return a;
}

Json verdict_json(const PositivityVerdict& v) {
  Json j;
  j["status"] = to_string(v.status);
  j["witness_kind"] = to_string(v.witness_kind);
  j["witness"] = v.witness ? io::to_json(*v.witness) : Json();
  j["period"] = v.period;
  j["step"] = v.step;
  j["h"] = io::to_json(v.h);
  j["hh"] = v.hh.get_str();
  j["hfh"] = v.hfh.get_str();
  j["salem"] = io::to_json(v.salem);
  j["c0"] = io::to_json(v.c0);
  j["cyclic_roots"] = v.cyclic_count;
  Json rh = Json::array();
  for (const auto& r : v.rh) rh.push_back(io::to_json(r));
  j["R_h"] = rh;
  Json ap = Json::array();
  for (const auto& [a, b] : v.a_prime) ap.push_back(Json::array({a.get_str(), b.get_str()}));
  j["A_prime"] = ap;
  j["S_h_examined"] = v.sh_count;
  return j;
}

std::string lattice_line(const Lattice& l) {
  GlueGroup g(l);
  auto cls = classify_even_unimodular(l);
  return "rank " + std::to_string(l.rank()) + ", det " + l.det().get_str() + ", signature " +
         sig_string(l.signature()) + ", " + (l.is_even() ? "even" : "odd") + ", glue " +
         invariants_string(g.invariants()) + (cls ? ", " + cls->name : "");
}

Json lattice_info(const Lattice& l) {
  GlueGroup g(l);
  auto cls = classify_even_unimodular(l);
  Json j;
  j["label"] = l.label();
  j["rank"] = l.rank();
  j["det"] = l.det().get_str();
  j["signature"] = sig_json(l.signature());
  j["even"] = l.is_even();
  j["glue"] = invariants_string(g.invariants());
  j["glue_order"] = g.size();
  j["unimodular_class"] = cls ? Json(cls->name) : Json();
  return j;
}

// ---- poly ----

CommandResult poly_cyclotomic(unsigned k) {
  if (k == 0) throw PreconditionError("k must be positive");
  IntPoly p = cyclotomic(k);
  auto fs = mod2_factor(p);
  CommandResult r;
  r.payload = {{"k", k}, {"polynomial", io::to_json(p)}, {"text", p.to_string()}, {"mod2_factors", factors_json(fs)}};
  r.summary = "Phi_" + std::to_string(k) + " = " + p.to_string() + "\nmod 2: " + factorization_string(fs);
  return r;
}

CommandResult poly_mod2(const IntPoly& p) {
  auto fs = mod2_factor(p);
  CommandResult r;
  r.payload = {{"polynomial", io::to_json(p)}, {"mod2_factors", factors_json(fs)}};
  r.summary = factorization_string(fs);
  return r;
}

CommandResult poly_trace(const IntPoly& p) {
  IntPoly t = trace_polynomial(p);
  CommandResult r;
  r.payload = {{"polynomial", io::to_json(p)}, {"trace_polynomial", io::to_json(t)}, {"text", t.to_string('y')}};
  r.summary = t.to_string('y');
  return r;
}

CommandResult poly_salem(const IntPoly& p, int digits) {
  SalemCheck sc = is_salem(p);
  CommandResult r;
  r.payload = {{"polynomial", io::to_json(p)}, {"salem", sc.salem}};
  if (!sc.salem) {
    r.payload["reason"] = sc.reason;
    r.summary = "not Salem: " + sc.reason;
    return r;
  }
  RealAlgebraic tau = *sc.tau;
  Int den = 1;
  for (int i = 0; i < digits + 2; ++i) den *= 10;
  tau.refine(Rat(1, den));
  const RatInterval& iv = tau.interval();
  Int ten = 1;
  for (int i = 0; i < digits; ++i) ten *= 10;
  // (lo, hi) with digits decimals; one unit wide when the interval does not straddle a digit boundary
  std::string lo = decimal_string(iv.lo, digits), hi = decimal_string(iv.hi + Rat(1, ten), digits);
  r.payload["interval"] = {to_string(iv.lo), to_string(iv.hi)};
  r.payload["value"] = decimal_string(iv.lo, digits);
  r.payload["bracket"] = {lo, hi};
  r.summary = "Salem, value in (" + lo + ", " + hi + ")";
  return r;
}

CommandResult poly_feasible(const IntPoly& p) {
  auto ps = feasible_primes(p);
  CommandResult r;
  r.payload = {{"polynomial", io::to_json(p)}, {"feasible_primes", ps}};
  std::string s;
  for (auto q : ps) s += (s.empty() ? "" : ", ") + std::to_string(q);
  r.summary = "feasible primes: {" + s + "}";
  return r;
}

CommandResult poly_units(const IntPoly& p, int bound, const std::string& out, const Globals& g) {
  IntPoly t = trace_polynomial(p);
  UnitSquareClasses u = unit_square_classes(t, bound);
  Json j = io::units_to_json(p, u, "salem-forge poly units --bound " + std::to_string(bound));
  CommandResult r;
  std::string path = out == "data" ? io::units_path(g.data_dir, p) : out;
  if (!path.empty()) {
    std::filesystem::create_directories(std::filesystem::path(path).parent_path());
    io::write_file(path, j);
    j["written"] = path;
  }
  j["complete"] = u.complete;
  r.payload = j;
  r.summary = std::to_string(u.basis.size()) + " independent units mod squares" + (u.complete ? " (complete)" : " (incomplete)") +
              (path.empty() ? "" : ", written to " + path);
  return r;
}

// ---- lattice ----

CommandResult lattice_glue(const Lattice& l, bool form) {
  GlueGroup g(l);
  CommandResult r;
  Json gens = Json::array();
  for (std::size_t i = 0; i < g.num_generators(); ++i) {
    Json e = {{"order", g.order(i).get_str()}, {"lift", io::to_json(g.generator(i))}};
    if (form && g.even()) e["q"] = to_string(g.q(g.unit(i)));
    gens.push_back(e);
  }
  r.payload = {{"invariants", invariants_string(g.invariants())}, {"order", g.size()}, {"generators", gens}};
  std::string s = "G = " + invariants_string(g.invariants()) + ", |G| = " + std::to_string(g.size());
  if (form) {
    Json b = Json::array();
    for (std::size_t i = 0; i < g.num_generators(); ++i) {
      Json row = Json::array();
      for (std::size_t k = 0; k < g.num_generators(); ++k) row.push_back(to_string(g.b(g.unit(i), g.unit(k))));
      b.push_back(row);
    }
    r.payload["b"] = b;
    r.payload["even"] = g.even();
    if (g.even()) r.payload["delta_zero"] = delta_is_zero(g);
    s += g.even() ? std::string(", delta = ") + (delta_is_zero(g) ? "0" : "1") : ", odd (b only)";
  }
  r.summary = s;
  return r;
}

CommandResult lattice_roots(const Lattice& l, bool list, Budget& budget) {
  auto rs = roots(l, budget);
  CommandResult r;
  r.payload = {{"count", 2 * rs.size()}, {"pairs", rs.size()}};
  if (list) {  // one representative per +-pair
    Json a = Json::array();
    for (const auto& v : rs) a.push_back(v);
    r.payload["roots"] = a;
  }
  r.summary = std::to_string(2 * rs.size());
  return r;
}

// ---- isom ----

CommandResult isom_check(const Lattice& l, const IntMatrix& f) {
  CommandResult r;
  bool ok = is_isometry(l, f);
  r.payload = {{"isometry", ok}};
  if (!ok) {
    r.summary = "not an isometry";
    return r;
  }
  auto ord = matrix_order(f);
  IntPoly cp = char_poly(f), mp = minimal_polynomial(f);
  auto split = split_cyclotomic(cp);
  r.payload["order"] = ord ? Json(*ord) : Json("infinite");
  r.payload["charpoly"] = io::to_json(cp);
  r.payload["minpoly"] = io::to_json(mp);
  r.payload["glue_action_order"] = glue_action_order(l, f);
  r.payload["salem_factor"] = io::to_json(split.rest);
  r.summary = "isometry, order " + (ord ? std::to_string(*ord) : std::string("infinite")) + ", charpoly " +
              cp.to_string() + ", glue action order " + std::to_string(glue_action_order(l, f));
  return r;
}

CommandResult isom_aut(const Lattice& l, Budget& budget) {
  AutomorphismGroup a = automorphism_group(l, budget);
  CommandResult r;
  Json gens = Json::array();
  for (const auto& m : a.generators()) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < a.dimension(); ++i) {
      Json row = Json::array();
      for (std::size_t k = 0; k < a.dimension(); ++k) row.push_back(m(i, k));
      rows.push_back(row);
    }
    gens.push_back(rows);
  }
  r.payload = {{"order", a.order().get_str()}, {"orbit_lengths", a.orbit_lengths()}, {"generators", gens}};
  r.summary = "|O(L)| = " + a.order().get_str() + ", " + std::to_string(a.generators().size()) + " generators";
  return r;
}

CommandResult isom_isometric(const Lattice& a, const Lattice& b, Budget& budget) {
  CommandResult r;
  Tri t = isometric(a, b, budget);
  const char* s = t == Tri::Yes ? "YES" : t == Tri::No ? "NO" : "UNKNOWN";
  r.payload = {{"isometric", s}};
  if (t == Tri::Yes)
    if (auto w = find_isometry(a, b, budget)) r.payload["witness"] = io::to_json(*w);
  r.summary = s;
  return r;
}

CommandResult isom_with_charpoly(const Lattice& l, const IntPoly& p, Budget& budget) {
  auto res = isometries_with_charpoly(l, p, budget);
  CommandResult r;
  Json cls = Json::array();
  for (const auto& c : res.classes)
    cls.push_back({{"matrix", io::to_json(c.representative)}, {"class_size", c.class_size}});
  r.payload = {{"classes", cls}, {"group_order", res.group_order.get_str()}, {"complete", res.complete}};
  r.summary = std::to_string(res.classes.size()) + " conjugacy class(es)" + (res.complete ? "" : " (incomplete)");
  if (!res.complete) r.code = 3;
  return r;
}

CommandResult isom_genus(const Lattice& l, std::int64_t p, std::size_t max, Budget& budget) {
  GenusResult g = genus_explore(l, p, max, budget);
  CommandResult r;
  Json cls = Json::array();
  std::size_t with_roots = 0;
  for (std::size_t i = 0; i < g.classes.size(); ++i) {
    bool has = !roots(g.classes[i], budget).empty();
    with_roots += has;
    cls.push_back({{"lattice", io::lattice_to_json(g.classes[i])},
                   {"aut_order", i < g.aut_orders.size() ? g.aut_orders[i].get_str() : "?"},
                   {"has_roots", has}});
  }
  r.payload = {{"p", p}, {"classes", cls}, {"complete", g.complete}, {"neighbors_built", g.neighbors_built}};
  r.summary = std::to_string(g.classes.size()) + " class(es), " + std::to_string(with_roots) + " with roots" +
              (g.complete ? "" : " (incomplete)");
  if (!g.complete) r.code = 3;
  return r;
}

// ---- glue ----

GluingOptions glue_options(std::int64_t sylow, std::size_t max) {
  GluingOptions o;
  if (sylow > 0) {
    o.domain = GluingOptions::Domain::Sylow;
    o.p = sylow;
  }
  if (max > 0) o.max_results = max;
  return o;
}

CommandResult glue_enumerate(const std::pair<Lattice, IntMatrix>& a, const std::pair<Lattice, IntMatrix>& b,
                             std::int64_t sylow, std::size_t max, Budget& budget) {
  auto e = enumerate_gluings(a.first, a.second, b.first, b.second, glue_options(sylow, max), budget);
  CommandResult r;
  Json maps = Json::array();
  for (const auto& m : e.maps) maps.push_back(io::gluing_to_json(m));
  r.payload = {{"maps", maps}, {"count", e.maps.size()}, {"candidates", e.candidates}, {"complete", e.complete}};
  r.summary = std::to_string(e.maps.size()) + " gluing map(s)" + (e.complete ? "" : " (search cut at --max)");
  return r;
}

CommandResult glue_apply(const std::pair<Lattice, IntMatrix>& a, const std::pair<Lattice, IntMatrix>& b,
                         const Json& map) {
  GluingMap m = io::gluing_from_json(map, GlueGroup(b.first));
  GluedLattice g = glue(a.first, b.first, m, a.second, b.second);
  CommandResult r;
  r.payload = io::isometry_to_json(g.lattice, *g.f);
  r.payload["info"] = lattice_info(g.lattice);
  r.payload["embed1"] = io::to_json(g.embed1);
  r.payload["embed2"] = io::to_json(g.embed2);
  r.summary = lattice_line(g.lattice);
  return r;
}

// ---- enriques ----

CommandResult enriques_verify(const std::string& path, bool positivity, Budget& budget) {
  EnriquesQuadruple q = quadruple_from_json(io::read_file(path));
  VerifyOptions o;
  o.run_positivity = positivity;
  QuadrupleReport rep = verify_quadruple(q, budget, o);
  CommandResult r;
  r.payload = rep.to_json();
  std::string s;
  for (const auto& c : rep.conditions)
    s += std::to_string(c.index) + ". " + (c.pass ? "PASS " : "FAIL ") + c.name + (c.evidence.empty() ? "" : ": " + c.evidence) + "\n";
  s += rep.passed() ? "all conditions hold" : "some condition fails";
  r.summary = s;
  return r;
}

CommandResult enriques_find(const std::string& out, const std::string& checkpoint, int max_l3, const Globals& g,
                            Budget& budget) {
  Tau8Config c;
  c.seed = g.seed;
  c.checkpoint = checkpoint;
  if (max_l3 > 0) c.max_l3 = max_l3;
  c.progress = progress;
  Tau8Result res = tau8_pipeline(c, budget);
  Json q = quadruple_to_json(res.quadruple);
  q["seed"] = g.seed;
  if (!out.empty()) io::write_file(out, q);
  QuadrupleReport rep = verify_quadruple(res.quadruple, budget);
  CommandResult r;
  r.payload = {{"status", rep.passed() ? "FOUND" : "FOUND_FAILS_VERIFY"}, {"seed", g.seed}, {"log", res.log},
               {"report", rep.to_json()}};
  if (out.empty()) r.payload["quadruple"] = q;
  else r.payload["out"] = out;
  r.summary = std::string(rep.passed() ? "quadruple found, all eight conditions hold" : "quadruple found but fails verification") +
              ", (h, h) = " + rep.hh.get_str() + (out.empty() ? "" : ", written to " + out);
  return r;
}

CommandResult enriques_rule_out(int tau, const std::string& stage, const std::string& out, const Globals& g,
                                Budget& budget) {
  RuleOutConfig c;
  c.data_dir = g.data_dir;
  c.seed = g.seed;
  if (stage != "all") {
    c.max_stage = std::stoi(stage);
    if (c.max_stage < 1 || c.max_stage > 6) throw PreconditionError("--stage must be all or 1..6");
  }
  c.progress = [](const TraceStep& s) {
    progress({{"stage", s.stage}, {"name", s.name}, {"kind", s.kind}, {"summary", s.summary}, {"seconds", s.seconds}});
  };
  RuleOutTrace t = rule_out(tau, c, budget);
  CommandResult r;
  r.payload = t.to_json();
  if (!out.empty()) io::write_file(out, r.payload);
  std::string s;
  for (const auto& st : t.steps) s += "[" + std::to_string(st.stage) + " " + st.kind + "] " + st.summary + "\n";
  r.summary = s + "tau_" + std::to_string(tau) + ": " + to_string(t.status) + " (" + t.reason + ")";
  return r;
}

CommandResult tables_reproduce(int n, const Globals& g) {
  TableReport rep = reproduce_table(n, g.data_dir);
  CommandResult r;
  r.payload = rep.to_json();
  std::string s;
  std::size_t bad = 0;
  for (const auto& row : rep.rows) {
    s += row.key + ": " + row.computed + "\n";
    if (!row.match) {
      ++bad;
      s += "  - " + row.expected + "\n  + " + row.computed + "  (" + row.detail + ")\n";
    }
  }
  s += bad == 0 ? "diff against fixture: empty" : "diff against fixture: " + std::to_string(bad) + " row(s) differ";
  r.summary = s;
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"salem-forge: lattice, isometry and Salem number computations"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "random seed");
  app.add_option("--budget", g.budget, "node budget (0 = SALEMFORGE_BUDGET_NODES or unlimited)");
  app.add_option("--threads", g.threads, "worker count (0 = available parallelism)")->check(CLI::NonNegativeNumber);
  app.add_flag("--json", g.json, "print the JSON payload instead of the summary");
  app.add_option("--data-dir", g.data_dir, "fixture directory");

  std::function<CommandResult(Budget&)> run;

  // poly
  auto* poly = app.add_subcommand("poly", "polynomials")->require_subcommand(1);
  std::string coeffs;
  unsigned k = 0;
  int digits = 5, bound = 3;
  std::string out;
  {
    auto* c = poly->add_subcommand("cyclotomic", "Phi_k and its factorization mod 2");
    c->add_option("k", k)->required();
    c->callback([&] { run = [&](Budget&) { return poly_cyclotomic(k); }; });
    auto* m = poly->add_subcommand("mod2-factor", "factorization mod 2");
    m->add_option("--coeffs", coeffs)->required();
    m->callback([&] { run = [&](Budget&) { return poly_mod2(io::poly_from_text(coeffs)); }; });
    auto* t = poly->add_subcommand("trace", "trace polynomial of a reciprocal polynomial");
    t->add_option("--coeffs", coeffs)->required();
    t->callback([&] { run = [&](Budget&) { return poly_trace(io::poly_from_text(coeffs)); }; });
    auto* s = poly->add_subcommand("salem-check", "Salem test with a certified root interval");
    s->add_option("--coeffs", coeffs)->required();
    s->add_option("--digits", digits)->check(CLI::Range(1, 60));
    s->callback([&] { run = [&](Budget&) { return poly_salem(io::poly_from_text(coeffs), digits); }; });
    auto* f = poly->add_subcommand("feasible-primes", "primes p with p | res(S, Phi_k) for some k");
    f->add_option("--coeffs", coeffs)->required();
    f->callback([&] { run = [&](Budget&) { return poly_feasible(io::poly_from_text(coeffs)); }; });
    auto* u = poly->add_subcommand("units", "unit square classes of Z[y]/(R) for the trace polynomial R");
    u->add_option("--coeffs", coeffs)->required();
    u->add_option("--bound", bound)->check(CLI::Range(1, 6));
    u->add_option("--out", out, "output file, or 'data' for the data directory");
    u->callback([&] { run = [&](Budget&) { return poly_units(io::poly_from_text(coeffs), bound, out, g); }; });
  }

  // lattice
  auto* lat = app.add_subcommand("lattice", "lattices")->require_subcommand(1);
  std::string lattice_arg, isometry_arg, other_arg, factor = "2", name;
  bool list = false;
  {
    auto* i = lat->add_subcommand("info", "rank, determinant, signature, parity and glue group");
    i->add_option("--lattice", lattice_arg)->required();
    i->callback([&] {
      run = [&](Budget&) {
        Lattice l = load_lattice(lattice_arg);
        return CommandResult{0, lattice_info(l), lattice_line(l)};
      };
    });
    auto* gg = lat->add_subcommand("glue-group", "discriminant group");
    gg->add_option("--lattice", lattice_arg)->required();
    gg->callback([&] { run = [&](Budget&) { return lattice_glue(load_lattice(lattice_arg), false); }; });
    auto* df = lat->add_subcommand("disc-form", "discriminant bilinear and quadratic forms");
    df->add_option("--lattice", lattice_arg)->required();
    df->callback([&] { run = [&](Budget&) { return lattice_glue(load_lattice(lattice_arg), true); }; });
    auto* r = lat->add_subcommand("roots", "roots of a definite lattice");
    auto* lo = r->add_option("--lattice", lattice_arg);
    r->add_option("--named", name)->excludes(lo);
    r->add_flag("--list", list);
    r->callback([&] {
      run = [&](Budget& b) {
        if (lattice_arg.empty() && name.empty()) throw PreconditionError("--lattice or --named is required");
        return lattice_roots(name.empty() ? load_lattice(lattice_arg) : lattice_from_name(name), list, b);
      };
    });
    auto* rs = lat->add_subcommand("rescale", "L(a)");
    rs->add_option("--lattice", lattice_arg)->required();
    rs->add_option("--factor", factor);
    rs->callback([&] {
      run = [&](Budget&) {
        Lattice l = rescale(load_lattice(lattice_arg), Rat(factor));
        return CommandResult{0, io::lattice_to_json(l), lattice_line(l)};
      };
    });
    auto* n = lat->add_subcommand("named", "Gram matrix of a named lattice (A6, D4, E8, E10, U, II_{1,9}, ...)");
    n->add_option("name", name)->required();
    n->callback([&] {
      run = [&](Budget&) {
        Lattice l = lattice_from_name(name);
        return CommandResult{0, io::lattice_to_json(l), lattice_line(l)};
      };
    });
  }

  // isom
  auto* isom = app.add_subcommand("isom", "isometries")->require_subcommand(1);
  std::int64_t prime = 3;
  std::size_t max_classes = 20;
  std::string vector_arg;
  {
    auto* c = isom->add_subcommand("check", "is f an isometry; order and characteristic polynomial");
    c->add_option("--lattice", lattice_arg)->required();
    c->add_option("--isometry", isometry_arg);
    c->callback([&] {
      run = [&](Budget&) {
        if (isometry_arg.empty()) {
          auto [l, f] = io::isometry_from_json(load_json(lattice_arg));
          return isom_check(l, f);
        }
        return isom_check(load_lattice(lattice_arg), load_matrix(isometry_arg));
      };
    });
    auto* ga = isom->add_subcommand("glue-action", "order of the action of f on G(L)");
    ga->add_option("--lattice", lattice_arg)->required();
    ga->add_option("--isometry", isometry_arg);
    ga->callback([&] {
      run = [&](Budget&) {
        auto [l, f] = load_pair(lattice_arg, isometry_arg);
        std::uint64_t o = glue_action_order(l, f);
        return CommandResult{0, {{"glue_action_order", o}}, "glue action order " + std::to_string(o)};
      };
    });
    auto* a = isom->add_subcommand("aut-group", "O(L) of a definite lattice");
    a->add_option("--lattice", lattice_arg)->required();
    a->callback([&] { run = [&](Budget& b) { return isom_aut(load_lattice(lattice_arg), b); }; });
    auto* i = isom->add_subcommand("isometric", "isometry test with a witness");
    i->add_option("--a", lattice_arg)->required();
    i->add_option("--b", other_arg)->required();
    i->callback([&] { run = [&](Budget& b) { return isom_isometric(load_lattice(lattice_arg), load_lattice(other_arg), b); }; });
    auto* w = isom->add_subcommand("with-charpoly", "conjugacy classes of isometries with a given characteristic polynomial");
    w->add_option("--lattice", lattice_arg)->required();
    w->add_option("--coeffs", coeffs)->required();
    w->callback([&] {
      run = [&](Budget& b) { return isom_with_charpoly(load_lattice(lattice_arg), io::poly_from_text(coeffs), b); };
    });
    auto* nb = isom->add_subcommand("neighbors", "Kneser p-neighbor of L at the isotropic vector v");
    nb->add_option("--lattice", lattice_arg)->required();
    nb->add_option("--p", prime)->required();
    nb->add_option("--vector", vector_arg)->required();
    nb->callback([&] {
      run = [&](Budget&) {
        Lattice n = kneser_neighbor(load_lattice(lattice_arg), prime, io::vector_from_json(load_json(vector_arg)));
        return CommandResult{0, io::lattice_to_json(n), lattice_line(n)};
      };
    });
    auto* gn = isom->add_subcommand("genus", "classes in the genus by p-neighbors");
    gn->add_option("--lattice", lattice_arg)->required();
    gn->add_option("--p", prime);
    gn->add_option("--max-classes", max_classes);
    gn->callback([&] { run = [&](Budget& b) { return isom_genus(load_lattice(lattice_arg), prime, max_classes, b); }; });
  }

  // twist
  auto* tw = app.add_subcommand("twist", "principal lattices and twists")->require_subcommand(1);
  std::string unit;
  {
    auto* p = tw->add_subcommand("principal", "(Z[x]/(P), f) with the trace form");
    p->add_option("--coeffs", coeffs)->required();
    p->callback([&] {
      run = [&](Budget&) {
        PLattice l = principal_lattice(io::poly_from_text(coeffs));
        return CommandResult{0, io::isometry_to_json(l.lattice, l.f), lattice_line(l.lattice)};
      };
    });
    auto* t = tw->add_subcommand("twist", "twist of the principal lattice by a(y), y = x + 1/x");
    t->add_option("--coeffs", coeffs)->required();
    t->add_option("--unit", unit)->required();
    t->callback([&] {
      run = [&](Budget&) {
        PLattice l = twist(principal_lattice(io::poly_from_text(coeffs)), parse_poly(unit));
        return CommandResult{0, io::isometry_to_json(l.lattice, l.f), lattice_line(l.lattice)};
      };
    });
  }

  // glue
  auto* gl = app.add_subcommand("glue", "gluing along discriminant groups")->require_subcommand(1);
  std::string l2_arg, f2_arg, map_arg;
  std::int64_t sylow = 0;
  std::size_t max_maps = 0, map_index = 0;
  {
    auto* e = gl->add_subcommand("enumerate", "equivariant anti-isometries H1 -> H2");
    e->add_option("--l1", lattice_arg)->required();
    e->add_option("--f1", isometry_arg);
    e->add_option("--l2", l2_arg)->required();
    e->add_option("--f2", f2_arg);
    e->add_option("--sylow", sylow, "restrict H1 to the Sylow p-subgroup");
    e->add_option("--max", max_maps);
    e->callback([&] {
      run = [&](Budget& b) {
        return glue_enumerate(load_pair(lattice_arg, isometry_arg), load_pair(l2_arg, f2_arg), sylow, max_maps, b);
      };
    });
    auto* a = gl->add_subcommand("apply", "glued lattice L1 +_phi L2 with f1 + f2");
    a->add_option("--l1", lattice_arg)->required();
    a->add_option("--f1", isometry_arg);
    a->add_option("--l2", l2_arg)->required();
    a->add_option("--f2", f2_arg);
    a->add_option("--map", map_arg, "a gluing map, or the output of glue enumerate")->required();
    a->add_option("--index", map_index, "map index in an enumerate output");
    a->callback([&] {
      run = [&](Budget&) {
        Json m = load_json(map_arg);
        if (m.contains("maps")) m = m.at("maps").at(map_index);
        return glue_apply(load_pair(lattice_arg, isometry_arg), load_pair(l2_arg, f2_arg), m);
      };
    });
  }

  // positivity
  auto* pos = app.add_subcommand("positivity", "positivity of an isometry")->require_subcommand(1);
  std::string h_arg;
  {
    auto* c = pos->add_subcommand("check", "positive or NotPositive with a witness");
    c->set_help_flag("--help", "print this help message and exit");  // frees the name h
    c->add_option("--lattice", lattice_arg)->required();
    c->add_option("--isometry", isometry_arg);
    c->add_option("--h", h_arg);
    c->callback([&] {
      run = [&](Budget& b) {
        auto [l, f] = load_pair(lattice_arg, isometry_arg);
        std::optional<IntVector> h;
        if (!h_arg.empty()) h = io::vector_from_json(load_json(h_arg));
        PositivityVerdict v = positivity_check(l, f, h, b, g.seed);
        std::string s = to_string(v.status);
        if (v.witness) s += std::string(", witness ") + to_string(v.witness_kind) + " at step " + std::to_string(v.step);
        return CommandResult{0, verdict_json(v), s + ", (h, h) = " + v.hh.get_str()};
      };
    });
  }

  // enriques
  auto* enr = app.add_subcommand("enriques", "quadruples for Enriques surface automorphisms")->require_subcommand(1);
  std::string stage = "all", checkpoint;
  int tau = 0, max_l3 = 0;
  bool with_positivity = false;
  {
    auto* v = enr->add_subcommand("verify", "check the eight conditions on a quadruple file");
    v->add_option("file", other_arg)->required();
    v->add_flag("--positivity", with_positivity, "also run the positivity check on T^perp");
    v->callback([&] { run = [&](Budget& b) { return enriques_verify(other_arg, with_positivity, b); }; });
    auto* f = enr->add_subcommand("find-tau8", "construct a quadruple of entropy log tau_8");
    f->add_option("--out", out);
    f->add_option("--checkpoint", checkpoint, "resumable search state");
    f->add_option("--max-l3", max_l3);
    f->callback([&] { run = [&](Budget& b) { return enriques_find(out, checkpoint, max_l3, g, b); }; });
    auto* r = enr->add_subcommand("rule-out", "constraint trace for tau_i");
    r->add_option("--tau", tau)->required()->check(CLI::Range(1, 7));
    r->add_option("--stage", stage);
    r->add_option("--out", out);
    r->callback([&] { run = [&](Budget& b) { return enriques_rule_out(tau, stage, out, g, b); }; });
  }

  // tables
  auto* tab = app.add_subcommand("tables", "reference tables")->require_subcommand(1);
  int table = 0;
  {
    auto* r = tab->add_subcommand("reproduce", "recompute a table and diff it against the fixture");
    r->add_option("n", table)->required()->check(CLI::Range(1, 3));
    r->callback([&] { run = [&](Budget&) { return tables_reproduce(table, g); }; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  CommandResult res;
  try {
    if (g.threads == 0) g.threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    Budget budget = g.budget ? Budget(g.budget) : Budget::from_env();
    res = run(budget);
  } catch (const BudgetExhausted& e) {
    res = {3, {{"status", "INCONCLUSIVE"}, {"reason", e.what()}}, std::string("INCONCLUSIVE: ") + e.what()};
  } catch (const PreconditionError& e) {
    res = {2, {{"status", "ERROR"}, {"error", e.what()}}, std::string("error: ") + e.what()};
  } catch (const Json::exception& e) {
    res = {2, {{"status", "ERROR"}, {"error", e.what()}}, std::string("error: malformed JSON: ") + e.what()};
  } catch (const std::invalid_argument& e) {
    res = {2, {{"status", "ERROR"}, {"error", e.what()}}, std::string("error: ") + e.what()};
  }
  if (g.json) std::cout << res.payload.dump(2) << "\n";
  else std::cout << res.summary << "\n";
  return res.code;
}
