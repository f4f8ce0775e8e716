#include "salemforge/enriques/tau8.hpp"

#include <chrono>
#include <fstream>
#include <random>
#include <sstream>

#include "salemforge/exactalg/linalg.hpp"
#include "salemforge/isom/charpoly_search.hpp"
#include "salemforge/isom/isometry.hpp"
#include "salemforge/lattice/enumerate.hpp"
#include "salemforge/lattice/sublattice.hpp"
#include "salemforge/positivity/positivity.hpp"

namespace salemforge {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

IntPoly s8() { return parse_poly("1 - x^2 - 2x^3 - x^4 + x^6"); }

struct Checkpoint {
  std::uint64_t seed = 0;
  std::uint64_t words = 0;
  std::string rng;  // engine state at the start of the current word
  std::uint64_t l3_seen = 0;
  std::uint64_t l3_at_word = 0;  // l3_seen when the current word started

  io::Json to_json() const { return {{"seed", seed}, {"words", words}, {"rng", rng}, {"l3_seen", l3_at_word}}; }
};

}  // namespace

Tau8StageA tau8_stage_a(Budget& budget) {
  Tau8StageA a;
  a.principal = principal_lattice(s8());
  a.twisted = twist(a.principal, parse_poly("1 + x"));
  a.twisted_glue_order = glue_action_order(a.twisted.lattice, a.twisted.f);
  Lattice d4 = lattice_D(4);
  auto res = isometries_with_charpoly(d4, pow(parse_poly("x - 1"), 3) * parse_poly("x + 1"), budget);
  a.d4_classes = res.classes.size();
  for (const auto& cl : res.classes) {
    if (glue_action_order(d4, cl.representative) != 2) continue;
    auto gl = enumerate_gluings(d4, cl.representative, a.twisted.lattice, a.twisted.f, GluingOptions{}, budget);
    if (gl.maps.empty()) continue;
    if (a.d4_usable++ > 0) continue;
    a.d4_f = cl.representative;
    a.glued = glue(d4, a.twisted.lattice, gl.maps[0], cl.representative, a.twisted.f);
  }
  if (a.d4_usable == 0) throw std::logic_error("stage A: no D4 isometry glues to L0(a)");
  auto cls = classify_even_unimodular(a.glued.lattice);
  a.glued_class = cls ? cls->name : "not unimodular";
  a.lplus = rescale(a.glued.lattice, 2);
  a.lplus.set_label("L+");
  a.fplus = *a.glued.f;
  a.fplus_glue_order = glue_action_order(a.lplus, a.fplus);
  return a;
}

PLattice tau8_stage_b() { return twist(principal_lattice(cyclotomic(8)), parse_poly("-4 - 2x")); }

Tau8Result tau8_pipeline(const Tau8Config& config, Budget& budget) {
  Tau8Result out;
  auto event = [&](io::Json e) {
    out.log.push_back(e);
    if (config.progress) config.progress(e);
  };
  auto t0 = Clock::now();
  Tau8StageA a = tau8_stage_a(budget);
  if (a.fplus_glue_order != 8) throw std::logic_error("stage A: f+ acts with order " + std::to_string(a.fplus_glue_order));
  event({{"stage", "A"}, {"glued", a.glued_class}, {"fplus_glue_order", a.fplus_glue_order},
         {"seconds", seconds_since(t0)}});
  t0 = Clock::now();
  PLattice l2 = tau8_stage_b();
  event({{"stage", "B"}, {"glue", invariants_string(GlueGroup(l2.lattice).invariants())},
         {"seconds", seconds_since(t0)}});

  // stage C state
  Checkpoint cp;
  cp.seed = config.seed;
  std::mt19937_64 rng(config.seed);
  if (!config.checkpoint.empty()) {
    std::ifstream in(config.checkpoint);
    if (in) {
      io::Json j = io::Json::parse(in);
      if (j.value("seed", std::uint64_t(0)) == config.seed) {
        cp.words = j.value("words", std::uint64_t(0));
        cp.l3_seen = j.value("l3_seen", std::uint64_t(0));
        std::istringstream(j.value("rng", std::string())) >> rng;
        event({{"stage", "resume"}, {"words", cp.words}});
      }
    }
  }
  auto save = [&]() {
    if (config.checkpoint.empty()) return;
    std::ofstream o(config.checkpoint);
    o << cp.to_json().dump(2) << "\n";
  };

  Lattice e8 = lattice_E(8);
  const IntMatrix& g = e8.gram();
  auto rts = roots(e8, budget);
  IntPoly target = pow(parse_poly("x - 1"), 2) * pow(parse_poly("x + 1"), 2) * pow(parse_poly("x^2 + 1"), 2);
  auto reflection = [&](const SmallVector& r) {
    IntVector rv = to_int(r);
    IntVector gr = g * rv;
    IntMatrix m = IntMatrix::identity(8);
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) m(i, j) += rv[i] * gr[j];
    return m;
  };
  GluingOptions od;
  od.domain = GluingOptions::Domain::Doubled;
  od.target = GluingOptions::Target::Doubled;
  od.accept = has_u_e10_2_invariants;
  GluingOptions oe;
  oe.max_results = config.stage_e_maps;
  EigenPair eig = salem_eigenpair(a.lplus, a.fplus);
  AbelianInvariants l3_glue = primary_invariants({2, 2, 4, 4, 4, 4});

  t0 = Clock::now();
  try {
    for (; cp.words < static_cast<std::uint64_t>(config.max_words); ++cp.words) {
      {
        std::ostringstream s;
        s << rng;
        cp.rng = s.str();
        cp.l3_at_word = cp.l3_seen;
      }
      budget.consume();
      IntMatrix f = IntMatrix::identity(8);
      int len = 2 + static_cast<int>(rng() % 8);
      for (int k = 0; k < len; ++k) f = f * reflection(rts[rng() % rts.size()]);
      if (char_poly(f) != target) continue;
      for (int trial = 0; trial < config.trials_per_word; ++trial) {
        budget.consume();
        // f-orbit of c/4 (and of d/2 on odd trials) added to E8 = E8^*
        std::vector<RatVector> extra;
        IntVector cc(8), dd(8);
        for (auto& x : cc) x = Int(static_cast<long>(rng() % 4));
        for (auto& x : dd) x = Int(static_cast<long>(rng() % 2));
        for (int k = 0; k < 4; ++k) {
          RatVector c4(8), d2(8);
          for (int i = 0; i < 8; ++i) {
            c4[i] = Rat(cc[i], 4);
            d2[i] = Rat(dd[i], 2);
          }
          extra.push_back(c4);
          if (trial % 2) extra.push_back(d2);
          cc = f * cc;
          dd = f * dd;
        }
        RatMatrix b = overlattice_basis(8, extra);
        if (abs(Rat(1) / determinant(b)) != 32) continue;
        // L3 = dual of the overlattice, a sublattice of E8 of index 32
        RatMatrix x = inverse(to_rat(g) * b.transpose());
        IntMatrix xi(8, 8);
        for (int i = 0; i < 8; ++i)
          for (int j = 0; j < 8; ++j) xi(i, j) = x(i, j).get_num();
        Lattice l3 = sublattice_gram(e8, xi, "L3");
        if (GlueGroup(l3).invariants() != l3_glue) continue;
        if (!short_vectors(l3, 2, budget).empty()) continue;
        IntMatrix f3 = transport_isometry(f, to_rat(xi));
        ++cp.l3_seen;
        event({{"stage", "C"}, {"words", cp.words + 1}, {"l3", cp.l3_seen}, {"seconds", seconds_since(t0)}});
        save();

        // stage D: L- = L2 +_phi2 L3 on the doubled subgroups
        auto gd = enumerate_gluings(l2.lattice, l2.f, l3, f3, od, budget);
        event({{"stage", "D"}, {"l3", cp.l3_seen}, {"maps", gd.maps.size()}});
        for (const auto& m2 : gd.maps) {
          GluedLattice lm = glue(l2.lattice, l3, m2, l2.f, f3);
          if (glue_action_order(lm.lattice, *lm.f) != 8) continue;
          // stage E: L- +_phi L+ = II_{3,19}
          auto ge = enumerate_gluings(lm.lattice, lm.f, a.lplus, a.fplus, oe, budget);
          event({{"stage", "E"}, {"l3", cp.l3_seen}, {"maps", ge.maps.size()}});
          for (const auto& m : ge.maps) {
            GluedLattice fin = glue(lm.lattice, a.lplus, m, lm.f, a.fplus);
            auto cls = classify_even_unimodular(fin.lattice);
            if (!cls || cls->name != "II_{3,19}") continue;
            // stage F: h with R_h and S_h empty on T^perp
            Sublattice tp = Sublattice(fin.lattice, lm.embed1 * fin.embed1).orthogonal_complement();
            Lattice ltp = tp.lattice();
            IntMatrix ftp = tp.restrict_isometry(*fin.f);
            for (int seed = 1; seed <= config.h_seeds; ++seed) {
              IntVector h;
              try {
                h = test_vector(a.lplus, a.fplus, eig, static_cast<std::uint64_t>(seed));
              } catch (const PreconditionError&) {
                continue;
              }
              IntVector ht = tp.coordinates(fin.embed2.transpose() * h);
              ObstructionSets ob = obstruction_sets(ltp, ftp, ht, budget);
              if (!ob.rh.empty() || !ob.sh.empty()) continue;
              EnriquesQuadruple q;
              q.lplus = a.lplus;
              q.fplus = a.fplus;
              q.lminus = lm.lattice;
              q.lminus.set_label("L-");
              q.fminus = *lm.f;
              q.t_basis = lm.embed1;
              q.phi = m;
              q.h = h;
              event({{"stage", "F"}, {"h_seed", seed}, {"hh", a.lplus.norm(h).get_str()},
                     {"seconds", seconds_since(t0)}});
              out.quadruple = std::move(q);
              return out;
            }
          }
        }
        if (cp.l3_seen >= static_cast<std::uint64_t>(config.max_l3))
          throw BudgetExhausted("no quadruple from the first " + std::to_string(config.max_l3) + " (L3, f3) candidates");
      }
    }
  } catch (const BudgetExhausted&) {
    save();
    throw;
  }
  save();
  throw BudgetExhausted("stage C: reflection word limit reached");
}

}  // namespace salemforge
