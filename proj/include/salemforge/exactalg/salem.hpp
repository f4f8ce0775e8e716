#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "salemforge/exactalg/realalg.hpp"

namespace salemforge {

// R with P(x) = x^m R(x + 1/x) for a reciprocal P of degree 2m.
IntPoly trace_polynomial(const IntPoly& p);

// Irreducibility over Q: mod-p degree patterns, then a bounded search for a factor.
bool is_irreducible_over_q(const IntPoly& p);

struct SalemCheck {
  bool salem = false;
  std::string reason;                // why not, when salem is false
  std::optional<RealAlgebraic> tau;  // the root > 1, certified
};

// Requires a monic irreducible polynomial; throws PreconditionError otherwise.
SalemCheck is_salem(const IntPoly& p);

// Minimal dimension of a rational representation of Z/n with a faithful action.
unsigned order_dimension_D(unsigned n);

struct CyclotomicSplit {
  std::map<unsigned, int> cyclotomic;  // k -> multiplicity of Phi_k
  IntPoly rest;                        // no cyclotomic factor left
};
CyclotomicSplit split_cyclotomic(const IntPoly& p);

// k with phi(k) <= bound, ascending.
std::vector<unsigned> cyclotomic_indices_up_to_degree(unsigned bound);

// Distinct-degree factor degrees of p mod a prime (p squarefree mod prime), empty if not squarefree.
std::vector<int> factor_degrees_mod_p(const IntPoly& p, std::uint64_t prime);

}  // namespace salemforge
