// SPDX-License-Identifier: Apache-2.0
// Shipped-manifold registry: parse the manifest, build closed quotient
// surfaces from gluing tables and disk samples from grown patches, and
// self-check every build against the expected census.
#pragma once

#include <algorithm>
#include <fstream>
#include <limits>
#include <nlohmann/json.hpp>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tessom/develop.hpp"
#include "tessom/goldberg.hpp"
#include "tessom/poly_map.hpp"
#include "tessom/tile_graph.hpp"

namespace tessom {

struct ManifoldSpec {
  std::string id;         // lowercase handle used everywhere (CLI, configs)
  std::string kind;       // "closed" | "disk"
  std::string base;       // gluing-table stem for closed manifolds
  int p = 0, q = 3;       // Schlafli symbol of the underlying tessellation
  int a = 1, b = 0;       // Goldberg-Coxeter parameters
  bool normalize = false; // relabel to the oriented convention before refining
  int n = 0;              // expected tile count (and disk sample size)
  int edges = 0;          // expected edge count
  std::optional<int> chi; // expected Euler characteristic (closed only)
  bool orientable = true;
  char geometry = 'e';    // 's' | 'e' | 'h'
  int diameter = 0;       // expected graph diameter
  std::string embedding;  // natural | signpost | signpost_grid | ...
  int columns = 0;        // expected embedding width
};

inline std::vector<ManifoldSpec> parse_manifest(std::istream& in) {
  nlohmann::json doc = nlohmann::json::parse(in);
  if (doc.at("version").get<int>() != 1)
    throw std::domain_error("manifest: unsupported version");
  std::vector<ManifoldSpec> out;
  for (const auto& row : doc.at("manifolds")) {
    ManifoldSpec ms;
    ms.id = row.at("id").get<std::string>();
    ms.kind = row.at("kind").get<std::string>();
    if (ms.kind != "closed" && ms.kind != "disk")
      throw std::domain_error("manifest: unknown kind for " + ms.id);
    if (ms.kind == "closed") ms.base = row.at("base").get<std::string>();
    ms.p = row.at("p").get<int>();
    ms.q = row.at("q").get<int>();
    ms.a = row.at("a").get<int>();
    ms.b = row.at("b").get<int>();
    ms.normalize = row.value("normalize", false);
    ms.n = row.at("n").get<int>();
    ms.edges = row.at("edges").get<int>();
    if (row.contains("chi") && !row.at("chi").is_null()) ms.chi = row.at("chi").get<int>();
    ms.orientable = row.at("orientable").get<bool>();
    ms.geometry = row.at("geometry").get<std::string>().at(0);
    ms.diameter = row.at("diameter").get<int>();
    ms.embedding = row.value("embedding", std::string{});
    ms.columns = row.value("columns", 0);
    out.push_back(std::move(ms));
  }
  return out;
}

inline std::vector<ManifoldSpec> load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open manifest: " + path);
  return parse_manifest(in);
}

inline const ManifoldSpec& find_manifold(const std::vector<ManifoldSpec>& list,
                                         const std::string& id) {
  for (const auto& ms : list)
    if (ms.id == id) return ms;
  throw std::domain_error("unknown manifold id: " + id);
}

// --- closed quotient surfaces ------------------------------------------------

inline TileGraph build_closed(const ManifoldSpec& ms, const std::string& data_dir) {
  std::string path = data_dir + "/manifolds/" + ms.base + ".glue";
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open gluing table: " + path);
  PolyMap map = parse_gluing_table(in);
  map.validate();
  if (ms.normalize) map = oriented_copy(map);
  Development dev = develop(map, ms.p, ms.q);
  return goldberg_refine(map, ms.p, ms.q, dev, ms.a, ms.b);
}

// --- disk samples ------------------------------------------------------------

namespace detail {

// Censor a refined patch down to the `take` tiles nearest the model origin.
// Order: geometric distance from the origin, then graph distance, then
// creation index — a geometric ball with a deterministic shell cut.
struct DiskSelection {
  std::vector<int> pick;   // selected original ids, in final tile order
  std::vector<int> dist;   // BFS distance of each original tile
  int max_dist = 0;        // distance of the farthest selected tile
};

inline DiskSelection select_disk_tiles(const TileGraph& g, int central, int take) {
  DiskSelection sel;
  sel.dist = bfs_distances(g, central);
  Point o = origin(g.geometry);
  std::vector<int> order(g.tile_count());
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> geo(g.tile_count());
  for (int t = 0; t < g.tile_count(); ++t) geo[t] = distance(g.centers[t], o);
  auto hops = [&](int t) {  // unreachable sorts last, not first
    return sel.dist[t] < 0 ? std::numeric_limits<int>::max() : sel.dist[t];
  };
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    if (geo[x] != geo[y]) return geo[x] < geo[y];
    if (hops(x) != hops(y)) return hops(x) < hops(y);
    return x < y;
  });
  if (order.size() < static_cast<size_t>(take) || sel.dist[order[take - 1]] < 0)
    throw std::domain_error("disk selection: patch too small");
  sel.pick.assign(order.begin(), order.begin() + take);
  for (int t : sel.pick) sel.max_dist = std::max(sel.max_dist, sel.dist[t]);
  return sel;
}

inline TileGraph censor_to_selection(const TileGraph& g, const DiskSelection& sel) {
  int n = static_cast<int>(sel.pick.size());
  std::vector<int> newid(g.tile_count(), -1);
  for (int i = 0; i < n; ++i) newid[sel.pick[i]] = i;
  TileGraph d;
  d.geometry = g.geometry;
  d.p = g.p;
  d.q = g.q;
  d.gc_a = g.gc_a;
  d.gc_b = g.gc_b;
  d.closed = false;
  d.orientable = true;
  d.sides.resize(n);
  d.adj.resize(n);
  d.back.resize(n);
  d.kind.resize(n);
  d.base_face.resize(n);
  for (int i = 0; i < n; ++i) {
    int t = sel.pick[i];
    d.sides[i] = g.sides[t];
    d.kind[i] = g.kind[t];
    d.base_face[i] = g.base_face[t];
    d.centers.push_back(g.centers[t]);
    d.corners.push_back(g.corners[t]);
    d.adj[i].assign(g.sides[t], -1);
    d.back[i].assign(g.sides[t], -1);
    for (int k = 0; k < g.sides[t]; ++k) {
      int m = g.adj[t][k];
      if (m >= 0 && newid[m] >= 0) {
        d.adj[i][k] = newid[m];
        d.back[i][k] = g.back[t][k];
      }
    }
  }
  d.check_symmetric();
  return d;
}

struct DiskSignature {
  std::vector<int> sides;
  std::vector<std::vector<int>> adj;
  friend bool operator==(const DiskSignature&, const DiskSignature&) = default;
};

inline DiskSignature disk_signature(const TileGraph& d) { return {d.sides, d.adj}; }

}  // namespace detail

// The n tiles of the refined {p,3} tiling nearest the central tile. The
// patch is regrown until adding another ring no longer changes the censored
// result, so boundary truncation cannot distort distances near the rim.
inline TileGraph build_disk(int p, int a, int b, int n) {
  if (n < 1) throw std::domain_error("disk: tile count must be positive");
  std::optional<detail::DiskSignature> last;
  TileGraph result;
  for (int rings = 2; rings <= 24; ++rings) {
    Patch patch = build_patch(p, 3, rings);
    TileGraph full = goldberg_refine(patch.map, p, 3, patch.dev, a, b);
    int central = -1;
    for (int t = 0; t < full.tile_count() && central < 0; ++t)
      if (full.kind[t] == TileKind::corner && full.base_face[t] == 0) central = t;
    if (central < 0) throw std::logic_error("disk: central tile not found");
    if (full.tile_count() < n) continue;
    detail::DiskSelection sel;
    try {
      sel = detail::select_disk_tiles(full, central, n);
    } catch (const std::domain_error&) {
      continue;  // not enough reachable tiles yet
    }
    // demand visible margin beyond the selection before trusting distances
    int patch_reach = 0;
    for (int dcur : sel.dist) patch_reach = std::max(patch_reach, dcur);
    if (patch_reach < sel.max_dist + 2) continue;
    TileGraph disk = detail::censor_to_selection(full, sel);
    detail::DiskSignature sig = detail::disk_signature(disk);
    if (last && sig == *last) return result;
    last = std::move(sig);
    result = std::move(disk);
  }
  throw std::runtime_error("disk: selection did not stabilize within ring budget");
}

inline TileGraph build_manifold(const ManifoldSpec& ms, const std::string& data_dir) {
  if (ms.kind == "closed") return build_closed(ms, data_dir);
  return build_disk(ms.p, ms.a, ms.b, ms.n);
}

// One line per mismatch between the built graph and the manifest row.
inline std::vector<std::string> self_check(const ManifoldSpec& ms, const TileGraph& g) {
  std::vector<std::string> bad;
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok) bad.push_back(ms.id + ": " + what);
  };
  std::ostringstream os;
  expect(g.tile_count() == ms.n,
         "tiles " + std::to_string(g.tile_count()) + " != " + std::to_string(ms.n));
  expect(g.edge_count() == ms.edges,
         "edges " + std::to_string(g.edge_count()) + " != " + std::to_string(ms.edges));
  expect(g.closed == (ms.kind == "closed"), "closed flag mismatch");
  if (ms.chi)
    expect(g.euler && *g.euler == *ms.chi, "Euler characteristic mismatch");
  expect(g.orientable == ms.orientable, "orientability mismatch");
  char geo = g.geometry == GeometryClass::spherical   ? 's'
             : g.geometry == GeometryClass::euclidean ? 'e'
                                                      : 'h';
  expect(geo == ms.geometry, "geometry class mismatch");
  return bad;
}

}  // namespace tessom
