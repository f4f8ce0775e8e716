#include "salemforge/enriques/quadruple.hpp"

#include <sstream>

#include "salemforge/exactalg/salem.hpp"
#include "salemforge/isom/autgroup.hpp"
#include "salemforge/isom/isometry.hpp"
#include "salemforge/lattice/enumerate.hpp"
#include "salemforge/lattice/sublattice.hpp"
#include "salemforge/positivity/positivity.hpp"

namespace salemforge {

namespace {

bool two_elementary_even(const Lattice& l, std::size_t rank, int pos, int neg, int length) {
  if (l.rank() != rank || !l.is_even()) return false;
  Signature s = l.signature();
  if (s.positive != pos || s.negative != neg) return false;
  GlueGroup g(l);
  if (g.invariants() != AbelianInvariants(static_cast<std::size_t>(length), 2)) return false;
  return delta_is_zero(g);
}

std::string sig_string(const Signature& s) {
  return "(" + std::to_string(s.positive) + "," + std::to_string(s.negative) + ")";
}

}  // namespace

bool has_e10_2_invariants(const Lattice& l) { return two_elementary_even(l, 10, 1, 9, 10); }
bool has_u_e10_2_invariants(const Lattice& l) { return two_elementary_even(l, 12, 2, 10, 10); }

void check_structure(const EnriquesQuadruple& q) {
  if (!has_e10_2_invariants(q.lplus)) throw PreconditionError("L+ does not have the invariants of E10(2)");
  if (!has_u_e10_2_invariants(q.lminus)) throw PreconditionError("L- does not have the invariants of U + E10(2)");
  if (!is_isometry(q.lplus, q.fplus)) throw PreconditionError("f+ is not an isometry of L+");
  if (!is_isometry(q.lminus, q.fminus)) throw PreconditionError("f- is not an isometry of L-");
  if (q.t_basis.rows() == 0 || q.t_basis.cols() != q.lminus.rank()) throw PreconditionError("T basis has the wrong shape");
  if (!Sublattice(q.lminus, q.t_basis).is_primitive()) throw PreconditionError("T is not primitive in L-");
  if (q.phi.order != 1024 || q.phi.h1.size() != q.phi.h2.size())
    throw PreconditionError("phi must be defined on all of G(L-)");
  if (q.h && q.h->size() != q.lplus.rank()) throw PreconditionError("h has the wrong length");
}

bool QuadrupleReport::passed() const {
  if (conditions.size() != 8) return false;
  for (const auto& c : conditions)
    if (!c.pass) return false;
  return true;
}

io::Json QuadrupleReport::to_json() const {
  io::Json j;
  io::Json cs = io::Json::array();
  for (const auto& c : conditions)
    cs.push_back({{"condition", c.index}, {"name", c.name}, {"pass", c.pass}, {"evidence", c.evidence}});
  j["conditions"] = cs;
  j["pass"] = passed();
  j["chi_plus"] = io::to_json(chi_plus);
  j["chi_minus"] = io::to_json(chi_minus);
  j["salem"] = io::to_json(salem);
  j["salem_interval"] = io::Json::array({to_string(salem_interval.lo), to_string(salem_interval.hi)});
  j["fminus_order"] = fminus_order;
  j["t_signature"] = {t_signature.positive, t_signature.negative};
  j["t_minpoly"] = io::to_json(t_minpoly);
  j["t_perp_roots"] = t_perp_roots;
  j["glued_class"] = glued_class;
  j["h"] = io::to_json(h);
  j["hh"] = hh.get_str();
  j["R_h"] = rh;
  j["S_h"] = sh;
  if (restricted_positive) j["restricted_positive"] = *restricted_positive;
  return j;
}

QuadrupleReport verify_quadruple(const EnriquesQuadruple& q, Budget& budget, const VerifyOptions& options) {
  check_structure(q);
  QuadrupleReport r;
  auto add = [&](int i, const std::string& name, bool pass, const std::string& ev) {
    r.conditions.push_back({i, pass, name, ev});
  };
  r.chi_plus = char_poly(q.fplus);
  r.chi_minus = char_poly(q.fminus);

  // 1
  {
    bool pass = false;
    std::string ev;
    try {
      SalemSplit sp = salem_split(q.fplus);
      r.salem = sp.salem;
      SalemCheck sc = is_salem(sp.salem);
      pass = sc.salem;
      if (sc.tau) {
        sc.tau->refine(Rat(1, 1000000));
        r.salem_interval = sc.tau->interval();
      }
      ev = "Salem factor " + sp.salem.to_string() + (pass ? ", root in (" + to_string(r.salem_interval.lo) + ", " +
                                                                to_string(r.salem_interval.hi) + "]"
                                                          : ": " + sc.reason);
    } catch (const PreconditionError& e) {
      ev = e.what();
    }
    add(1, "spectral radius of f+ is a Salem number", pass, ev);
  }
  // 2
  {
    bool pass = charpoly_compat(r.chi_plus, r.chi_minus);
    add(2, "chi_{f-} = (1+x)^2 chi_{f+} mod 2", pass,
        "chi_{f-} mod 2 = " + factorization_string(mod2_factor(r.chi_minus)) + ", chi_{f+} mod 2 = " +
            factorization_string(mod2_factor(r.chi_plus)));
  }
  // 3
  {
    auto ord = matrix_order(q.fminus);
    r.fminus_order = ord.value_or(0);
    add(3, "f- has finite order", ord.has_value(), ord ? "order " + std::to_string(*ord) : "no finite order found");
  }
  Sublattice t(q.lminus, q.t_basis);
  Lattice lt = t.lattice();
  // 4
  {
    r.t_signature = lt.signature();
    bool pass = r.t_signature.positive == 2 && r.t_signature.zero == 0 &&
                r.t_signature.negative == static_cast<int>(lt.rank()) - 2;
    add(4, "signature of T is (2, r)", pass, "signature " + sig_string(r.t_signature));
  }
  // 5
  bool stable = t.is_invariant(q.fminus);
  {
    bool pass = false;
    std::string ev = "T is not f--stable";
    if (stable) {
      r.t_minpoly = minimal_polynomial(t.restrict_isometry(q.fminus));
      pass = is_irreducible_over_q(r.t_minpoly);
      ev = "minimal polynomial " + r.t_minpoly.to_string() + (pass ? " (irreducible)" : " (reducible)");
    }
    add(5, "minimal polynomial of f-|T is irreducible", pass, ev);
  }
  // 6
  {
    Lattice perp = t.orthogonal_complement().lattice();
    bool definite = perp.rank() == 0 || perp.is_negative_definite();
    bool pass = false;
    std::string ev = "T^perp is not negative definite";
    if (definite) {
      r.t_perp_roots = perp.rank() ? roots(perp, budget).size() : 0;
      pass = r.t_perp_roots == 0;
      ev = std::to_string(r.t_perp_roots) + " root pairs in T^perp (rank " + std::to_string(perp.rank()) + ")";
    }
    add(6, "T^perp in L- has no roots", pass, ev);
  }
  // 7
  std::optional<GluedLattice> fin;
  {
    bool pass = false;
    std::string ev;
    try {
      fin = glue(q.lminus, q.lplus, q.phi, q.fminus, q.fplus);
      auto cls = classify_even_unimodular(fin->lattice);
      r.glued_class = cls ? cls->name : "not unimodular";
      pass = r.glued_class == "II_{3,19}";
      ev = "glued lattice " + r.glued_class;
    } catch (const PreconditionError& e) {
      ev = std::string("gluing failed: ") + e.what();
    }
    add(7, "L- +_phi L+ is II_{3,19}", pass, ev);
  }
  // 8
  {
    bool pass = false;
    std::string ev;
    if (!fin || !stable) {
      ev = "needs the glued isometry and an f--stable T";
    } else {
      IntMatrix tb = q.t_basis * fin->embed1;
      Sublattice tg(fin->lattice, tb);
      Sublattice tp = tg.orthogonal_complement();
      Lattice ltp = tp.lattice();
      IntMatrix ftp = tp.restrict_isometry(*fin->f);
      std::vector<IntVector> hs;
      if (q.h) {
        hs.push_back(*q.h);
      } else {
        EigenPair e = salem_eigenpair(q.lplus, q.fplus);
        for (int seed = 1; seed <= options.h_seeds; ++seed) {
          try {
            hs.push_back(test_vector(q.lplus, q.fplus, e, static_cast<std::uint64_t>(seed)));
          } catch (const BudgetExhausted&) {
          }
        }
      }
      for (const auto& h : hs) {
        Int hh = q.lplus.norm(h);
        if (hh <= 0 || q.lplus.inner(h, q.fplus * h) <= 0) continue;
        IntVector ht = tp.coordinates(fin->embed2.transpose() * h);
        ObstructionSets ob = obstruction_sets(ltp, ftp, ht, budget);
        r.h = h;
        r.hh = hh;
        r.rh = ob.rh.size();
        r.sh = ob.sh.size();
        if (ob.rh.empty() && ob.sh.empty()) {
          pass = true;
          break;
        }
      }
      if (r.h.empty()) ev = "no h with (h,h) > 0 and (h, f+ h) > 0";
      else
        ev = "h^2 = " + r.hh.get_str() + ", |R_h| = " + std::to_string(r.rh) + ", |S_h| = " + std::to_string(r.sh);
      if (options.run_positivity) {
        PositivityVerdict v = positivity_check(ltp, ftp, std::nullopt, budget);
        r.restricted_positive = v.positive();
        ev += std::string(", positivity on T^perp: ") + to_string(v.status);
      }
    }
    add(8, "h in L+ with (h,h) > 0, no roots of T^perp orthogonal to h, h and F(h) in one chamber", pass, ev);
  }
  return r;
}

EnriquesQuadruple sign_flip(const EnriquesQuadruple& q) {
  EnriquesQuadruple out = q;
  out.fminus = IntMatrix(-q.fminus);
  return out;
}

bool charpoly_compat(const IntPoly& chi_plus, const IntPoly& chi_minus) {
  if (chi_plus.degree() != 10 || chi_minus.degree() != 12)
    throw PreconditionError("charpoly_compat needs degrees 10 and 12");
  Gf2Poly one_x(3);
  return Gf2Poly::from_int_poly(chi_minus) == one_x * one_x * Gf2Poly::from_int_poly(chi_plus);
}

std::vector<CyclotomicProduct> finite_order_charpoly_candidates(Gf2Poly target, int degree) {
  if (target.degree() != degree) throw PreconditionError("target degree does not match");
  std::vector<unsigned> pool = cyclotomic_indices_up_to_degree(static_cast<unsigned>(degree));
  std::vector<IntPoly> phis;
  std::vector<Gf2Poly> reds;
  for (unsigned k : pool) {
    phis.push_back(cyclotomic(k));
    reds.push_back(Gf2Poly::from_int_poly(phis.back()));
  }
  std::vector<CyclotomicProduct> out;
  std::vector<unsigned> chosen;
  std::function<void(std::size_t, int, Gf2Poly, IntPoly)> rec = [&](std::size_t from, int left, Gf2Poly red,
                                                                    IntPoly prod) {
    if (left == 0) {
      if (red == target) out.push_back({chosen, prod});
      return;
    }
    for (std::size_t i = from; i < pool.size(); ++i) {
      if (phis[i].degree() > left) continue;
      Gf2Poly next = red * reds[i];
      if (!divmod(target, next).second.is_zero()) continue;
      chosen.push_back(pool[i]);
      rec(i, left - phis[i].degree(), next, prod * phis[i]);
      chosen.pop_back();
    }
  };
  rec(0, degree, Gf2Poly::one(), IntPoly{1});
  return out;
}

AxiomCheck obstruction_E8_UU2(const Lattice& n, const Lattice& t, Budget& budget) {
  AxiomCheck out;
  if (n.rank() == 8 && (n.is_negative_definite() || n.is_positive_definite())) {
    Lattice e82 = rescale(lattice_E(8), n.is_negative_definite() ? 2 : -2);
    out.n_is_e8_2 = find_isometry(n, e82, budget).has_value();
  }
  Lattice uu2 = direct_sum(lattice_U(1), lattice_U(2));
  Tri iso = isometric(t, uu2, budget);
  if (iso == Tri::Yes) {
    out.t_is_u_u2 = true;
    out.t_method = "isometry";
  } else if (iso == Tri::Unknown) {
    // indefinite even 2-elementary lattices are determined by rank, signature, length and delta
    out.t_is_u_u2 = two_elementary_even(t, 4, 2, 2, 2);
    out.t_method = "invariants";
  }
  out.fires = out.n_is_e8_2 && out.t_is_u_u2;
  return out;
}

io::Json quadruple_to_json(const EnriquesQuadruple& q) {
  io::Json j;
  j["Lplus"] = io::lattice_to_json(q.lplus);
  j["fplus"] = io::to_json(q.fplus);
  j["Lminus"] = io::lattice_to_json(q.lminus);
  j["fminus"] = io::to_json(q.fminus);
  j["T"] = io::to_json(q.t_basis);
  j["phi"] = io::gluing_to_json(q.phi);
  if (q.h) j["h"] = io::to_json(*q.h);
  return j;
}

EnriquesQuadruple quadruple_from_json(const io::Json& j) {
  for (const char* k : {"Lplus", "fplus", "Lminus", "fminus", "T", "phi"})
    if (!j.contains(k)) throw PreconditionError(std::string("quadruple JSON is missing \"") + k + "\"");
  EnriquesQuadruple q;
  q.lplus = io::lattice_from_json(j.at("Lplus"));
  q.fplus = io::matrix_from_json(j.at("fplus"));
  q.lminus = io::lattice_from_json(j.at("Lminus"));
  q.fminus = io::matrix_from_json(j.at("fminus"));
  q.t_basis = io::matrix_from_json(j.at("T"));
  q.phi = io::gluing_from_json(j.at("phi"), GlueGroup(q.lplus));
  if (j.contains("h")) q.h = io::vector_from_json(j.at("h"));
  if (q.fplus.rows() != q.lplus.rank() || q.fminus.rows() != q.lminus.rank())
    throw PreconditionError("isometry sizes do not match the lattices");
  return q;
}

}  // namespace salemforge
