// SPDX-License-Identifier: Apache-2.0
// The shipped manifold registry: every manifest row must rebuild to its
// recorded census (tiles, edges, Euler characteristic, orientability,
// diameter, curvature) from the data files alone.
#include <algorithm>
#include <catch2/catch_amalgamated.hpp>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "tessom/manifold.hpp"

using namespace tessom;

namespace {

const char* kDataDir = TESSOM_SOURCE_DATA_DIR;

const std::vector<ManifoldSpec>& manifest() {
  static std::vector<ManifoldSpec> list = load_manifest(std::string(kDataDir) + "/manifest.json");
  return list;
}

}  // namespace

TEST_CASE("manifest lists the nineteen shipped manifolds", "[manifold]") {
  const auto& list = manifest();
  REQUIRE(list.size() == 19);
  std::set<std::string> ids;
  for (const auto& ms : list) {
    ids.insert(ms.id);
    for (char c : ms.id) REQUIRE((std::islower(c) || std::isdigit(c) || c == '-'));
    REQUIRE((ms.kind == "closed" || ms.kind == "disk"));
    REQUIRE(ms.n > 0);
    REQUIRE(ms.edges > 0);
    REQUIRE(ms.q == 3);
  }
  REQUIRE(ids.size() == 19);  // unique
  REQUIRE(ids.count("kq") == 1);
  REQUIRE(ids.count("disk-euclid") == 1);
  REQUIRE_THROWS_AS(find_manifold(list, "atlantis"), std::domain_error);
}

TEST_CASE("manifest parser rejects malformed input", "[manifold]") {
  std::istringstream bad_version(R"({"version": 2, "manifolds": []})");
  REQUIRE_THROWS_AS(parse_manifest(bad_version), std::domain_error);
  std::istringstream bad_kind(R"({"version": 1, "manifolds": [
    {"id": "x", "kind": "wormhole", "p": 7, "q": 3, "a": 1, "b": 0,
     "n": 1, "edges": 0, "orientable": true, "geometry": "h", "diameter": 0}]})");
  REQUIRE_THROWS_AS(parse_manifest(bad_kind), std::domain_error);
}

TEST_CASE("every closed manifold rebuilds to its manifest row", "[manifold]") {
  for (const auto& ms : manifest()) {
    if (ms.kind != "closed") continue;
    INFO(ms.id);
    TileGraph g = build_manifold(ms, kDataDir);
    REQUIRE(self_check(ms, g).empty());
    REQUIRE(g.tile_count() == ms.n);
    REQUIRE(g.edge_count() == ms.edges);
    REQUIRE(g.euler.value() == ms.chi.value());
    REQUIRE(g.orientable == ms.orientable);
    REQUIRE(graph_diameter(g) == ms.diameter);
    // closed surfaces: mean curvature is exactly 6 chi / n
    REQUIRE(g.discrete_curvature() ==
            Catch::Approx(6.0 * ms.chi.value() / ms.n).margin(1e-12));
    for (int t = 0; t < g.tile_count(); ++t) REQUIRE(g.phantom_count(t) == 0);
  }
}

TEST_CASE("every disk rebuilds to its manifest row", "[manifold]") {
  // heptagon counts among the selected tiles, implied by the recorded
  // curvatures: 6 - curvature*... = mean sides
  std::map<std::string, int> heptagons = {
      {"disk10", 520}, {"disk11", 163}, {"disk20", 113}, {"disk21", 71},
      {"disk40", 29},  {"disk43", 8},   {"disk-euclid", 0}};
  std::map<std::string, double> curvature = {
      {"disk10", -1.0},      {"disk11", -0.313462}, {"disk20", -0.217308},
      {"disk21", -0.136538}, {"disk40", -0.0557692}, {"disk43", -0.0153846},
      {"disk-euclid", 0.0}};
  for (const auto& ms : manifest()) {
    if (ms.kind != "disk") continue;
    INFO(ms.id);
    TileGraph g = build_manifold(ms, kDataDir);
    REQUIRE(self_check(ms, g).empty());
    REQUIRE(g.tile_count() == ms.n);
    REQUIRE(g.edge_count() == ms.edges);
    REQUIRE_FALSE(g.closed);
    REQUIRE_FALSE(g.euler.has_value());
    REQUIRE(graph_diameter(g) == ms.diameter);  // also proves connectivity
    int hept = 0;
    for (int s : g.sides) hept += (s == ms.p && ms.p != 6);
    REQUIRE(hept == heptagons.at(ms.id));
    REQUIRE(g.discrete_curvature() == Catch::Approx(curvature.at(ms.id)).margin(1e-5));
    // phantom handshake: censored degrees account for every side
    long long total_sides = 0;
    for (int s : g.sides) total_sides += s;
    long long phantoms = 0;
    for (int t = 0; t < g.tile_count(); ++t) phantoms += g.phantom_count(t);
    REQUIRE(total_sides == 2LL * g.edge_count() + phantoms);
    REQUIRE(phantoms > 0);  // a disk has a rim
  }
}

TEST_CASE("disk selection is centered and monotone", "[manifold]") {
  const auto& ms = find_manifold(manifest(), "disk10");
  TileGraph g = build_manifold(ms, kDataDir);
  // tile 0 is the centre: the origin of the model
  REQUIRE(distance(g.centers[0], origin(g.geometry)) < 1e-9);
  // renumbering follows the selection order: distance from the centre is
  // monotone nondecreasing in the tile id
  auto d = bfs_distances(g, 0);
  for (int t = 1; t < g.tile_count(); ++t) REQUIRE(d[t] >= d[t - 1]);
  // interior tiles keep all seven neighbors
  REQUIRE(g.degree(0) == 7);
  REQUIRE(g.phantom_count(0) == 0);
  // trivial single-tile disk
  TileGraph one = build_disk(7, 1, 0, 1);
  REQUIRE(one.tile_count() == 1);
  REQUIRE(one.edge_count() == 0);
  REQUIRE(one.phantom_count(0) == 7);
  REQUIRE_THROWS_AS(build_disk(7, 1, 0, 0), std::domain_error);
}

TEST_CASE("self-check reports census mismatches", "[manifold]") {
  ManifoldSpec ms = find_manifold(manifest(), "kq");
  TileGraph g = build_manifold(ms, kDataDir);
  ms.n = 1;
  ms.edges = 2;
  ms.chi = 7;
  ms.orientable = false;
  ms.geometry = 'e';
  auto bad = self_check(ms, g);
  REQUIRE(bad.size() == 5);
}
