#pragma once

#include <string>

#include "json.hpp"
#include "salemforge/exactalg/poly.hpp"
#include "salemforge/lattice/glue.hpp"
#include "salemforge/lattice/lattice.hpp"
#include "salemforge/twistglue/gluing.hpp"
#include "salemforge/twistglue/units.hpp"

namespace salemforge::io {

using Json = nlohmann::ordered_json;

// Polynomials: integer arrays, constant term first (decimal strings for entries beyond 64 bits).
Json to_json(const IntPoly& p);
IntPoly poly_from_json(const Json& j);
// Also accepts "1,0,-1" and "1 - x^2" strings.
IntPoly poly_from_text(const std::string& s);

// Matrices and vectors: decimal integer strings. Readers also accept plain numbers.
Json to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const Json& j);
Json to_json(const IntVector& v);
IntVector vector_from_json(const Json& j);
Json to_json(const RatVector& v);

// {"label": str?, "gram": [[int-as-string]]}
Json lattice_to_json(const Lattice& l);
Lattice lattice_from_json(const Json& j);

// {"lattice": ..., "matrix": [[int-as-string]]}
Json isometry_to_json(const Lattice& l, const IntMatrix& f);
std::pair<Lattice, IntMatrix> isometry_from_json(const Json& j);

// {"H1": [...], "H2": [...], "matrix": [[int]], "order": n}: phi(H1[i]) = sum_j matrix[i][j] H2[j].
// Group elements are coordinates in the Smith basis of the glue group, which is a function of the Gram
// matrix, so the map replays against the same lattices.
Json gluing_to_json(const GluingMap& phi);
GluingMap gluing_from_json(const Json& j, const GlueGroup& g2);

// data/units/<hash>.json: {"polynomial": [...], "trace_polynomial": [...], "units": [[int]],
// "representatives": [[int]] (one small unit per class of U / U^2, indexed by basis mask), "source": str}
Json units_to_json(const IntPoly& salem, const UnitSquareClasses& u, const std::string& source);
struct UnitData {
  IntPoly polynomial;
  IntPoly trace_polynomial;
  std::vector<IntPoly> units;  // basis of U / U^2 in the y-basis
  std::vector<IntPoly> representatives;
  std::string source;
};
UnitData units_from_json(const Json& j);
std::string units_path(const std::string& data_dir, const IntPoly& salem);

Json read_file(const std::string& path);
void write_file(const std::string& path, const Json& j);

}  // namespace salemforge::io
