#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "salemforge/enriques/quadruple.hpp"

namespace salemforge {

// Salem polynomials S_1..S_8 of the eight smallest candidate Salem numbers.
const std::vector<IntPoly>& salem_candidates();
IntPoly salem_candidate(int i);

struct TraceStep {
  int stage = 0;
  std::string name;
  std::string kind;  // COMPUTED, AXIOM or STOP
  std::string summary;
  io::Json data;
  double seconds = 0;
};

struct RuleOutTrace {
  enum class Status { RuledOut, Inconclusive };
  int tau = 0;
  Status status = Status::Inconclusive;
  std::string reason;
  std::uint64_t seed = 0;
  std::vector<TraceStep> steps;
  std::size_t axiom_steps() const;
  io::Json to_json() const;
};

const char* to_string(RuleOutTrace::Status s);

struct RuleOutConfig {
  std::string data_dir;   // unit files under data_dir/units
  int max_stage = 6;      // stop after this stage (INCONCLUSIVE if the rule-out is not finished)
  std::uint64_t seed = 0x5A1E;
  std::function<void(const TraceStep&)> progress;
};

// Runs the constraint stages for tau_i. tau_1 and tau_3 have complete endgames; the others stop after
// the generic stages with INCONCLUSIVE. BudgetExhausted propagates to the caller.
RuleOutTrace rule_out(int i, const RuleOutConfig& config, Budget& budget);

// Stage pieces, exposed for tests.

// Possible chi_{f+} = S C with C a product of cyclotomic polynomials of degree 10 - deg S, keeping those
// with res(S, C) != +-1 (otherwise E10 would split off an even unimodular lattice of signature (1, deg S - 1)).
struct PlusCharpolys {
  std::vector<CyclotomicProduct> kept, dropped;
  std::vector<Gf2Poly> residues;  // distinct reductions mod 2 of S C over kept C
};
PlusCharpolys plus_charpolys(const IntPoly& s);

// 2-lengths l1 of G(L1) compatible with an F_2[x]/(C1)-module structure, l1 <= rank1 and 10 - l1 <= rank2.
std::vector<int> kernel_length_options(const IntPoly& c1, int rank1, int rank2);

}  // namespace salemforge
