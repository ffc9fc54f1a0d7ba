// SPDX-License-Identifier: Apache-2.0
// The finite tessellation all later stages work on: tiles with side-indexed
// ordered adjacency, optional geometry (centers, polygon corners, deck
// transforms for quotient copies), tile class tags and manifold metadata.
#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <stdexcept>
#include <vector>

#include "tessom/geometry.hpp"

namespace tessom {

enum class TileKind : unsigned char { corner, hexagon, centroid };

struct TileGraph {
  // sides[t] is the polygon size including phantom boundary sides of disks;
  // adj[t][k] is the neighbor across side k or -1 on an open boundary;
  // back[t][k] is the matching side index on that neighbor.
  std::vector<int> sides;
  std::vector<std::vector<int>> adj;
  std::vector<std::vector<int>> back;

  std::vector<Point> centers;               // empty when geometry unavailable
  std::vector<std::vector<Point>> corners;  // per-tile polygon for rendering
  std::vector<Isometry> decks;              // quotient holonomies (render copies)

  std::vector<TileKind> kind;
  std::vector<int> base_face;  // originating base face for corner tiles, else -1

  GeometryClass geometry = GeometryClass::euclidean;
  int p = 0, q = 0;
  int gc_a = 1, gc_b = 0;
  bool closed = true;
  bool orientable = true;
  std::optional<int> euler;

  int tile_count() const { return static_cast<int>(sides.size()); }

  int degree(int t) const {
    int d = 0;
    for (int n : adj[t])
      if (n >= 0) ++d;
    return d;
  }

  int edge_count() const {
    long long darts = 0;
    for (int t = 0; t < tile_count(); ++t) darts += degree(t);
    return static_cast<int>(darts / 2);
  }

  // Phantom sides only exist on open boundaries.
  int phantom_count(int t) const { return sides[t] - degree(t); }

  void check_symmetric() const {
    for (int t = 0; t < tile_count(); ++t)
      for (int k = 0; k < static_cast<int>(adj[t].size()); ++k) {
        int n = adj[t][k];
        if (n < 0) continue;
        if (n >= tile_count() || back[t][k] < 0 ||
            back[t][k] >= static_cast<int>(adj[n].size()) ||
            adj[n][back[t][k]] != t || back[n][back[t][k]] != k)
          throw std::domain_error("tile graph adjacency is not symmetric");
      }
  }

  // 2q/(q-2) - mean neighbor count; phantom sides count as neighbors
  // outside the sample, so the mean uses `sides`, not `degree`.
  double discrete_curvature() const {
    long long total = 0;
    for (int s : sides) total += s;
    return 2.0 * q / (q - 2.0) - static_cast<double>(total) / tile_count();
  }
};

inline std::vector<int> bfs_distances(const TileGraph& g, int src) {
  std::vector<int> dist(g.tile_count(), -1);
  std::deque<int> q{src};
  dist[src] = 0;
  while (!q.empty()) {
    int t = q.front();
    q.pop_front();
    for (int n : g.adj[t])
      if (n >= 0 && dist[n] < 0) {
        dist[n] = dist[t] + 1;
        q.push_back(n);
      }
  }
  return dist;
}

// All-pairs hop counts, row-major n*n. Throws on a disconnected graph.
struct DistanceTable {
  int n = 0;
  std::vector<std::uint16_t> d;
  std::uint16_t operator()(int i, int j) const { return d[static_cast<size_t>(i) * n + j]; }
  int diameter = 0;
};

inline DistanceTable graph_distance_all(const TileGraph& g) {
  DistanceTable tab;
  tab.n = g.tile_count();
  tab.d.assign(static_cast<size_t>(tab.n) * tab.n, 0);
  for (int s = 0; s < tab.n; ++s) {
    auto row = bfs_distances(g, s);
    for (int j = 0; j < tab.n; ++j) {
      if (row[j] < 0) throw std::domain_error("graph is disconnected");
      tab.d[static_cast<size_t>(s) * tab.n + j] = static_cast<std::uint16_t>(row[j]);
      if (row[j] > tab.diameter) tab.diameter = row[j];
    }
  }
  return tab;
}

inline int graph_diameter(const TileGraph& g) {
  int diam = 0;
  for (int s = 0; s < g.tile_count(); ++s)
    for (int d : bfs_distances(g, s)) {
      if (d < 0) throw std::domain_error("graph is disconnected");
      if (d > diam) diam = d;
    }
  return diam;
}

}  // namespace tessom
