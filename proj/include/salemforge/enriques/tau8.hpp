#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "salemforge/enriques/quadruple.hpp"
#include "salemforge/twistglue/principal.hpp"

namespace salemforge {

// Stage A: L+ = (D4 +_phi1 L0(a))(2), L0 the principal S8-lattice, a = 1 + y.
struct Tau8StageA {
  PLattice principal;
  PLattice twisted;
  std::uint64_t twisted_glue_order = 0;  // order of the action on G(L0(a))
  std::size_t d4_classes = 0;            // classes of D4 isometries with chi = (x-1)^3 (x+1)
  std::size_t d4_usable = 0;             // of those, acting with order 2 on G(D4) and gluing
  IntMatrix d4_f;
  GluedLattice glued;                    // before rescaling
  std::string glued_class;
  Lattice lplus;
  IntMatrix fplus;
  std::uint64_t fplus_glue_order = 0;
};
Tau8StageA tau8_stage_a(Budget& budget);

// Stage B: twist of the principal Phi_8-lattice by a' = -4 - 2y.
PLattice tau8_stage_b();

struct Tau8Config {
  std::uint64_t seed = 1;
  int max_words = 200000;        // reflection words tried in stage C
  int trials_per_word = 400;     // f-stable overlattices sampled per word
  int max_l3 = 20;               // (L3, f3) candidates passed to stage D
  std::size_t stage_e_maps = 50; // gluings tried per L- in stage E
  int h_seeds = 20;              // test vectors tried in stage F
  std::string checkpoint;        // file for resumable state ("" = none)
  std::function<void(const io::Json&)> progress;  // stage events
};

struct Tau8Result {
  EnriquesQuadruple quadruple;
  io::Json log = io::Json::array();  // per-stage counts and timings
};

// Runs stages A-F. Throws BudgetExhausted (after writing the checkpoint) when the budget runs out.
Tau8Result tau8_pipeline(const Tau8Config& config, Budget& budget);

}  // namespace salemforge
