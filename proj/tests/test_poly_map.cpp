// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "tessom/poly_map.hpp"

using namespace tessom;

namespace {

PolyMap load(const std::string& name) {
  std::ifstream in(std::string(TESSOM_SOURCE_DATA_DIR) + "/manifolds/" + name + ".glue");
  REQUIRE(in.good());
  return parse_gluing_table(in);
}

struct Expect {
  const char* name;
  int faces, edges, vertices, chi;
  bool orientable;
};

// Shipped base tables and their invariants.
const Expect kTables[] = {
    {"tetrahedron", 4, 6, 4, 2, true},
    {"cube", 6, 12, 8, 2, true},
    {"dodecahedron", 12, 30, 20, 2, true},
    {"hemi_dodecahedron", 6, 15, 10, 1, false},
    {"klein_quartic", 24, 84, 56, -4, true},
    {"bolza", 6, 24, 16, -2, true},
    {"bolza2", 12, 48, 32, -4, true},
    {"minimal", 6, 21, 14, -1, false},
    {"zebra", 12, 42, 28, -2, true},
    {"torus_hex", 529, 1587, 1058, 0, true},
    {"torus_sq", 520, 1560, 1040, 0, true},
    {"torus_rec", 522, 1566, 1044, 0, true},
    {"klein_sq", 520, 1560, 1040, 0, false},
};

}  // namespace

TEST_CASE("shipped gluing tables satisfy their invariants") {
  for (const auto& e : kTables) {
    INFO(e.name);
    PolyMap m = load(e.name);
    CHECK(m.face_count() == e.faces);
    CHECK(m.edge_count() == e.edges);
    CHECK(m.vertex_count() == e.vertices);
    CHECK(m.euler_characteristic() == e.chi);
    CHECK(m.orientable() == e.orientable);
    CHECK(m.connected());
    // every vertex of a {p,3} table is trivalent
    for (const auto& fan : m.vertex_orbits()) CHECK(fan.size() == 3);
  }
}

TEST_CASE("serialization round-trips") {
  PolyMap m = load("klein_quartic");
  std::ostringstream out;
  write_gluing_table(m, out);
  std::istringstream in(out.str());
  PolyMap m2 = parse_gluing_table(in);
  REQUIRE(m2.face_count() == m.face_count());
  for (int f = 0; f < m.face_count(); ++f)
    for (int s = 0; s < m.sides[f]; ++s) {
      CHECK(m2.glue[f][s].f == m.glue[f][s].f);
      CHECK(m2.glue[f][s].s == m.glue[f][s].s);
      CHECK(m2.glue[f][s].rev == m.glue[f][s].rev);
    }
}

TEST_CASE("malformed tables are rejected") {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return parse_gluing_table(in);
  };
  CHECK_THROWS_AS(parse("face 0 3\n"), std::domain_error);            // no header
  CHECK_THROWS_AS(parse("faces 1\nface 0 2\n"), std::domain_error);   // unpaired
  CHECK_THROWS_AS(parse("faces 1\nface 0 2\nglue 0 0 0 0 N\n"),
                  std::domain_error);                                 // self-pair
  CHECK_THROWS_AS(parse("faces 1\nface 0 2\nglue 0 0 0 1 N\nglue 0 1 0 0 N\n"),
                  std::domain_error);                                 // double pair
  CHECK_THROWS_AS(parse("faces 1\nface 0 2\nglue 0 0 0 5 N\n"), std::domain_error);
  CHECK_THROWS_AS(parse("faces 1\nface 0 2\nglue 0 0 0 1 X\n"), std::domain_error);
}

TEST_CASE("vertex fans close consistently on a known example") {
  // Two triangles glued into a sphere (triangular pillow): 3 vertices.
  PolyMap m;
  m.resize({3, 3});
  m.add_glue(0, 0, 1, 0, false);
  m.add_glue(0, 1, 1, 2, false);
  m.add_glue(0, 2, 1, 1, false);
  m.validate();
  CHECK(m.edge_count() == 3);
  CHECK(m.vertex_count() == 3);
  CHECK(m.euler_characteristic() == 2);
  CHECK(m.orientable());
  for (const auto& fan : m.vertex_orbits()) CHECK(fan.size() == 2);
}
