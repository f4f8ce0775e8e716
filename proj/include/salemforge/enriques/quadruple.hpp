#pragma once

#include <optional>
#include <string>
#include <vector>

#include "salemforge/exactalg/gf2poly.hpp"
#include "salemforge/exactalg/realalg.hpp"
#include "salemforge/io/jsonio.hpp"
#include "salemforge/lattice/lattice.hpp"
#include "salemforge/twistglue/gluing.hpp"

namespace salemforge {

// (f+, f-, T, phi) with L+ ~ E10(2), L- ~ U + E10(2), T primitive in L-, phi: G(L-) -> G(L+),
// and optionally the vector h in L+ used for the chamber condition.
struct EnriquesQuadruple {
  Lattice lplus;
  IntMatrix fplus;
  Lattice lminus;
  IntMatrix fminus;
  IntMatrix t_basis;  // rows in L- coordinates
  GluingMap phi;
  std::optional<IntVector> h;
};

// Structural checks (invariants of L+ and L-, isometries, phi total on both glue groups).
// Throws PreconditionError naming the first violation.
void check_structure(const EnriquesQuadruple& q);

struct ConditionResult {
  int index = 0;
  bool pass = false;
  std::string name;
  std::string evidence;
};

struct QuadrupleReport {
  std::vector<ConditionResult> conditions;  // 1..8
  IntPoly chi_plus, chi_minus, salem;
  RatInterval salem_interval;
  std::uint64_t fminus_order = 0;
  Signature t_signature;
  IntPoly t_minpoly;
  std::size_t t_perp_roots = 0;
  std::string glued_class;
  IntVector h;                  // the h used (L+ coordinates)
  Int hh;
  std::size_t rh = 0, sh = 0;   // |R_h|, |S_h| on T^perp of the glued lattice
  std::optional<bool> restricted_positive;  // positivity_check on T^perp, when requested
  bool passed() const;
  io::Json to_json() const;
};

struct VerifyOptions {
  bool run_positivity = false;  // also run the full positivity check on T^perp
  int h_seeds = 20;             // test vectors tried when q.h is absent
};

QuadrupleReport verify_quadruple(const EnriquesQuadruple& q, Budget& budget, const VerifyOptions& options = {});

// (f+, -f-, T, phi).
EnriquesQuadruple sign_flip(const EnriquesQuadruple& q);

// chi_minus = (1 + x)^2 chi_plus mod 2, for deg chi_plus = 10 and deg chi_minus = 12.
bool charpoly_compat(const IntPoly& chi_plus, const IntPoly& chi_minus);

struct CyclotomicProduct {
  std::vector<unsigned> indices;  // with repetition, ascending
  IntPoly poly;
};
// Products of Phi_k with phi(k) <= 12 of the given degree that reduce to target mod 2.
std::vector<CyclotomicProduct> finite_order_charpoly_candidates(Gf2Poly target, int degree = 12);

// Imported geometric fact: no gluing exists when N ~ E8(2) and T ~ U + U(2).
struct AxiomCheck {
  bool fires = false;
  bool n_is_e8_2 = false;
  bool t_is_u_u2 = false;
  std::string t_method;  // "isometry" or "invariants"
  std::string axiom = "no Enriques quadruple with N ~ E8(2) and T ~ U + U(2)";
};
AxiomCheck obstruction_E8_UU2(const Lattice& n, const Lattice& t, Budget& budget);

// Invariants of E10(2) and U + E10(2): even, signature, G = F_2^10, b(x, x) = 0.
bool has_e10_2_invariants(const Lattice& l);
bool has_u_e10_2_invariants(const Lattice& l);

io::Json quadruple_to_json(const EnriquesQuadruple& q);
EnriquesQuadruple quadruple_from_json(const io::Json& j);

}  // namespace salemforge
