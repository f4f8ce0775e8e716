#include "salemforge/io/jsonio.hpp"

#include <fstream>
#include <sstream>

#include "salemforge/core/errors.hpp"

namespace salemforge::io {

namespace {

Int int_from_json(const Json& j) {
  if (j.is_number_integer()) return Int(std::to_string(j.get<std::int64_t>()));
  if (j.is_string()) {
    Int a;
    if (a.set_str(j.get<std::string>(), 10) != 0) throw PreconditionError("not an integer: " + j.get<std::string>());
    return a;
  }
  throw PreconditionError("expected an integer, got " + j.dump());
}

Json int_number(const Int& a) {
  if (fits_int64(a)) return Json(to_int64(a));
  return Json(a.get_str());
}

}  // namespace

Json to_json(const IntPoly& p) {
  Json a = Json::array();
  for (const auto& c : p.coefficients()) a.push_back(int_number(c));
  return a;
}

IntPoly poly_from_json(const Json& j) {
  if (j.is_string()) return poly_from_text(j.get<std::string>());
  if (!j.is_array()) throw PreconditionError("polynomial must be an integer array");
  std::vector<Int> c;
  for (const auto& x : j) c.push_back(int_from_json(x));
  return IntPoly(std::move(c));
}

IntPoly poly_from_text(const std::string& s) {
  if (s.find('x') != std::string::npos) return parse_poly(s);
  std::vector<Int> c;
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    std::size_t a = tok.find_first_not_of(" \t"), b = tok.find_last_not_of(" \t");
    if (a == std::string::npos) throw PreconditionError("empty coefficient in \"" + s + "\"");
    c.push_back(int_from_json(Json(tok.substr(a, b - a + 1))));
  }
  return IntPoly(std::move(c));
}

Json to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json r = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(m(i, j).get_str());
    rows.push_back(std::move(r));
  }
  return rows;
}

IntMatrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw PreconditionError("matrix must be an array of rows");
  std::vector<std::vector<Int>> rows;
  for (const auto& r : j) {
    if (!r.is_array()) throw PreconditionError("matrix row must be an array");
    std::vector<Int> row;
    for (const auto& x : r) row.push_back(int_from_json(x));
    if (!rows.empty() && row.size() != rows[0].size()) throw PreconditionError("ragged matrix");
    rows.push_back(std::move(row));
  }
  return IntMatrix::from_rows(rows);
}

Json to_json(const IntVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x.get_str());
  return a;
}

IntVector vector_from_json(const Json& j) {
  if (!j.is_array()) throw PreconditionError("vector must be an array");
  IntVector v;
  for (const auto& x : j) v.push_back(int_from_json(x));
  return v;
}

Json to_json(const RatVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

Json lattice_to_json(const Lattice& l) {
  Json j;
  if (!l.label().empty()) j["label"] = l.label();
  j["gram"] = to_json(l.gram());
  return j;
}

Lattice lattice_from_json(const Json& j) {
  if (j.is_string()) return lattice_from_name(j.get<std::string>());
  if (!j.is_object() || !j.contains("gram")) throw PreconditionError("lattice JSON needs a \"gram\" field");
  IntMatrix g = matrix_from_json(j.at("gram"));
  if (!g.is_square()) throw PreconditionError("Gram matrix must be square");
  if (g.transpose() != g) throw PreconditionError("Gram matrix must be symmetric");
  return Lattice(g, j.value("label", std::string()));
}

Json isometry_to_json(const Lattice& l, const IntMatrix& f) {
  Json j;
  j["lattice"] = lattice_to_json(l);
  j["matrix"] = to_json(f);
  return j;
}

std::pair<Lattice, IntMatrix> isometry_from_json(const Json& j) {
  if (!j.contains("lattice") || !j.contains("matrix")) throw PreconditionError("isometry JSON needs lattice and matrix");
  Lattice l = lattice_from_json(j.at("lattice"));
  IntMatrix f = matrix_from_json(j.at("matrix"));
  if (f.rows() != l.rank() || f.cols() != l.rank()) throw PreconditionError("isometry matrix has the wrong size");
  if (f.transpose() * l.gram() * f != l.gram()) throw PreconditionError("matrix is not an isometry of the lattice");
  return {l, f};
}

Json gluing_to_json(const GluingMap& phi) {
  Json j;
  auto elems = [](const std::vector<GroupElement>& v) {
    Json a = Json::array();
    for (const auto& e : v) a.push_back(e);
    return a;
  };
  j["H1"] = elems(phi.h1);
  j["H2"] = elems(phi.h2);
  Json m = Json::array();
  for (std::size_t i = 0; i < phi.h1.size(); ++i) {
    Json r = Json::array();
    for (std::size_t k = 0; k < phi.h2.size(); ++k) r.push_back(i == k ? 1 : 0);
    m.push_back(std::move(r));
  }
  j["matrix"] = std::move(m);
  j["order"] = phi.order;
  return j;
}

GluingMap gluing_from_json(const Json& j, const GlueGroup& g2) {
  GluingMap phi;
  for (const auto& e : j.at("H1")) phi.h1.push_back(e.get<GroupElement>());
  std::vector<GroupElement> h2;
  for (const auto& e : j.at("H2")) h2.push_back(e.get<GroupElement>());
  const auto& grp = g2.group();
  if (j.contains("matrix")) {
    const auto& m = j.at("matrix");
    if (m.size() != phi.h1.size()) throw PreconditionError("gluing matrix needs one row per H1 generator");
    for (const auto& row : m) {
      if (row.size() != h2.size()) throw PreconditionError("gluing matrix needs one column per H2 generator");
      GroupElement img = grp.zero();
      for (std::size_t k = 0; k < h2.size(); ++k) img = grp.add(img, grp.scale(h2[k], row[k].get<std::int64_t>()));
      phi.h2.push_back(img);
    }
  } else {
    phi.h2 = h2;
  }
  for (const auto& e : phi.h2)
    if (e.size() != grp.num_generators()) throw PreconditionError("H2 element does not match G(L2)");
  phi.order = j.value("order", static_cast<std::uint64_t>(subgroup_elements(grp, phi.h2).size()));
  return phi;
}

Json units_to_json(const IntPoly& salem, const UnitSquareClasses& u, const std::string& source) {
  Json j;
  j["polynomial"] = to_json(salem);
  j["trace_polynomial"] = to_json(u.trace_poly);
  Json units = Json::array();
  for (const auto& b : u.basis) units.push_back(to_json(b));
  j["units"] = std::move(units);
  Json reps = Json::array();
  for (std::uint64_t m = 0; m < (std::uint64_t(1) << u.basis.size()); ++m) reps.push_back(to_json(unit_class(u, m)));
  j["representatives"] = std::move(reps);
  Json chars = Json::array();
  for (auto [p, r] : u.characters) chars.push_back(Json::array({p, r}));
  j["characters"] = std::move(chars);
  j["source"] = source;
  return j;
}

UnitData units_from_json(const Json& j) {
  UnitData d;
  d.polynomial = poly_from_json(j.at("polynomial"));
  if (j.contains("trace_polynomial")) d.trace_polynomial = poly_from_json(j.at("trace_polynomial"));
  for (const auto& u : j.at("units")) d.units.push_back(poly_from_json(u));
  if (j.contains("representatives"))
    for (const auto& u : j.at("representatives")) d.representatives.push_back(poly_from_json(u));
  d.source = j.value("source", std::string());
  return d;
}

std::string units_path(const std::string& data_dir, const IntPoly& salem) {
  return data_dir + "/units/" + polynomial_hash(salem) + ".json";
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(path + ": " + e.what());
  }
}

void write_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw PreconditionError("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace salemforge::io
