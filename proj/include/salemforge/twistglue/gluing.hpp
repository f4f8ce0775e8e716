#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "salemforge/core/errors.hpp"
#include "salemforge/exactalg/matrix.hpp"
#include "salemforge/lattice/glue.hpp"
#include "salemforge/lattice/lattice.hpp"

namespace salemforge {

// Gluing map phi: H1 -> H2, stored as generators of H1 in G(L1) and their images in G(L2).
struct GluingMap {
  std::vector<GroupElement> h1;
  std::vector<GroupElement> h2;
  std::uint64_t order = 1;  // |H1|
};

struct GluingOptions {
  enum class Domain { Full, Sylow, Doubled, Explicit };
  enum class Target { Any, Sylow, Doubled, Explicit };
  Domain domain = Domain::Full;
  Target target = Target::Any;
  std::int64_t p = 2;                      // prime for the Sylow modes
  std::vector<GroupElement> h1_generators;  // Domain::Explicit
  std::vector<GroupElement> h2_generators;  // Target::Explicit
  // Require q_1(x) = -q_2(phi x) mod 2 (even overlattice); otherwise only b is checked.
  bool quadratic = true;
  std::size_t max_results = std::numeric_limits<std::size_t>::max();
  // Optional filter on the glued lattice.
  std::function<bool(const Lattice&)> accept;
};

struct GluingEnumeration {
  std::vector<GluingMap> maps;
  std::uint64_t candidates = 0;  // partial assignments examined
  bool complete = true;          // false if max_results cut the search
};

// All gluing maps phi on the chosen domain with phi o f1 = f2 o phi (if isometries are given).
GluingEnumeration enumerate_gluings(const Lattice& l1, const std::optional<IntMatrix>& f1, const Lattice& l2,
                                    const std::optional<IntMatrix>& f2, const GluingOptions& options,
                                    Budget& budget);

// phi^-1 as a gluing map H2 -> H1.
GluingMap invert(const GluingMap& phi);

struct GluedLattice {
  Lattice lattice;
  RatMatrix basis;   // rows: basis of the glued lattice in L1 + L2 coordinates
  IntMatrix embed1;  // rows: basis of L1 in glued coordinates
  IntMatrix embed2;  // rows: basis of L2 in glued coordinates
  std::optional<IntMatrix> f;
};

// L1 +_phi L2 per the overlattice construction; extends f1 + f2 when both are given.
GluedLattice glue(const Lattice& l1, const Lattice& l2, const GluingMap& phi,
                  const std::optional<IntMatrix>& f1 = std::nullopt,
                  const std::optional<IntMatrix>& f2 = std::nullopt);

// Overlattice of l generated by l and the given rational vectors (in l coordinates).
// Returns the new basis as rational rows (HNF, full rank).
RatMatrix overlattice_basis(std::size_t rank, const std::vector<RatVector>& extra);

// Matrix of f in the basis given by rational rows (must be integral).
IntMatrix transport_isometry(const IntMatrix& f, const RatMatrix& basis);

}  // namespace salemforge
