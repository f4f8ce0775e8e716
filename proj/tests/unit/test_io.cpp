#include <gtest/gtest.h>

#include "salemforge/io/jsonio.hpp"

using namespace salemforge;

TEST(Json, PolynomialForms) {
  IntPoly p = parse_poly("1 - x^2 - 2x^3 - x^4 + x^6");
  EXPECT_EQ(io::poly_from_json(io::to_json(p)), p);
  EXPECT_EQ(io::poly_from_text("1,0,-1,-2,-1,0,1"), p);
  EXPECT_EQ(io::poly_from_text("1 - x^2 - 2x^3 - x^4 + x^6"), p);
  IntPoly big({Int("123456789012345678901234567890"), Int(1)});
  io::Json j = io::to_json(big);
  EXPECT_TRUE(j[0].is_string());
  EXPECT_EQ(io::poly_from_json(io::Json::parse(j.dump())), big);
}

TEST(Json, MatrixAndLattice) {
  Lattice e8 = lattice_E(8);
  Lattice back = io::lattice_from_json(io::Json::parse(io::lattice_to_json(e8).dump()));
  EXPECT_EQ(back.gram(), e8.gram());
  EXPECT_EQ(io::lattice_from_json(io::Json("E8")).gram(), e8.gram());
  IntMatrix m{{1, -2}, {3, 4}};
  EXPECT_EQ(io::matrix_from_json(io::to_json(m)), m);
  EXPECT_EQ(io::matrix_from_json(io::Json::parse("[[1,-2],[3,4]]")), m);
  IntVector v{Int(5), Int(-7)};
  EXPECT_EQ(io::vector_from_json(io::to_json(v)), v);
}

TEST(Json, MalformedInputIsAPreconditionError) {
  EXPECT_THROW(io::lattice_from_json(io::Json::parse(R"({"gram": [[2, 1], [0, 2]]})")), PreconditionError);
  EXPECT_THROW(io::lattice_from_json(io::Json::parse(R"({"gram": [[2, 1, 0], [1, 2, 0]]})")), PreconditionError);
  EXPECT_THROW(io::poly_from_text("1 + y^"), PreconditionError);
  EXPECT_THROW(io::read_file("/nonexistent/file.json"), PreconditionError);
}

TEST(Json, IsometryRoundTrip) {
  Lattice u = lattice_U(1);
  IntMatrix swap{{0, 1}, {1, 0}};
  auto [l, f] = io::isometry_from_json(io::Json::parse(io::isometry_to_json(u, swap).dump()));
  EXPECT_EQ(l.gram(), u.gram());
  EXPECT_EQ(f, swap);
  IntMatrix bad{{2, 0}, {0, 1}};
  EXPECT_THROW(io::isometry_from_json(io::isometry_to_json(u, bad)), PreconditionError);
}
