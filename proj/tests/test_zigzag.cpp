// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <set>

#include "tessom/manifold.hpp"
#include "tessom/zigzag.hpp"

using namespace tessom;

namespace {

using EdgeSeq = std::vector<std::pair<int, int>>;

EdgeSeq normalized(EdgeSeq seq) {
  EdgeSeq rev(seq.rbegin(), seq.rend());
  return std::min(seq, rev);
}

// Independent tracer: walk in from every rim edge, turning alternately, using
// geometric corner positions (not the combinatorial fan logic under test) to
// identify the two sides of the pivot tile at each vertex.
std::multiset<EdgeSeq> oracle_lines(const TileGraph& g) {
  const double tol = 1e-6;
  auto corner_at = [&](int t, const Point& v) {
    // sides of t with an endpoint at v: side j runs from corner j to j+1
    std::vector<int> sides;
    int deg = g.sides[t];
    for (int j = 0; j < deg; ++j)
      if (distance(g.corners[t][j], v) < tol || distance(g.corners[t][(j + 1) % deg], v) < tol)
        sides.push_back(j);
    return sides;
  };
  std::multiset<EdgeSeq> found;
  for (int t = 0; t < g.tile_count(); ++t)
    for (int k = 0; k < g.sides[t]; ++k) {
      if (g.adj[t][k] >= 0) continue;  // seed only at rim sides
      for (int end = 0; end < 2; ++end) {
        Point v = g.corners[t][(k + end) % g.sides[t]];
        // enter along the rim edge, first turn hugs tile t
        int pivot = t;
        int cur = k;
        EdgeSeq seq;
        while (true) {
          auto sides = corner_at(pivot, v);
          REQUIRE(sides.size() == 2);
          REQUIRE((sides[0] == cur || sides[1] == cur));
          int nxt = sides[0] == cur ? sides[1] : sides[0];
          if (g.adj[pivot][nxt] < 0) break;  // leaves the disk
          int w = g.adj[pivot][nxt];
          seq.emplace_back(std::min(pivot, w), std::max(pivot, w));
          // move to the far endpoint of the new edge, next turn hugs w
          int deg = g.sides[pivot];
          Point a = g.corners[pivot][nxt], b = g.corners[pivot][(nxt + 1) % deg];
          Point far = distance(a, v) < tol ? b : a;
          REQUIRE((distance(a, v) < tol || distance(b, v) < tol));
          cur = g.back[pivot][nxt];
          pivot = w;
          v = far;
        }
        if (!seq.empty()) found.insert(normalized(std::move(seq)));
      }
    }
  return found;
}

}  // namespace

TEST_CASE("single-tile disk has no zig-zag lines", "[zigzag]") {
  TileGraph one = build_disk(7, 2, 1, 1);
  REQUIRE(zigzag_lines(one).empty());
}

TEST_CASE("every edge crossing belongs to exactly one line and lines split disks",
          "[zigzag]") {
  for (auto [p, n] : {std::pair{7, 200}, std::pair{6, 150}}) {
    TileGraph g = build_disk(p, 2, 1, n);
    auto lines = zigzag_lines(g);
    REQUIRE(!lines.empty());
    std::map<std::pair<int, int>, int> mult;
    for (const ZigZagLine& l : lines) {
      REQUIRE_FALSE(l.cyclic);
      for (auto& e : l.edges) mult[e]++;
      auto label = line_split(g, l);  // throws unless exactly two components
      REQUIRE((int)label.size() == g.tile_count());
    }
    // each internal edge is traversed twice across all lines
    REQUIRE((int)mult.size() == g.edge_count());
    for (auto& [e, m] : mult) REQUIRE(m == 2);
  }
}

TEST_CASE("three lines of the GC(2,1) heptagonal disk can pen five regions", "[zigzag]") {
  // an arrangement of three lines with exactly one crossing pair makes
  // 4 + 1 = 5 cells; the full line set always isolates every tile
  TileGraph g = build_disk(7, 2, 1, 200);
  auto lines = zigzag_lines(g);
  // longest lines first: the figure-style chords through the middle
  std::sort(lines.begin(), lines.end(), [](const ZigZagLine& a, const ZigZagLine& b) {
    return a.edges.size() > b.edges.size();
  });
  int m = std::min<int>(14, (int)lines.size());
  bool five = false;
  for (int i = 0; i < m && !five; ++i)
    for (int j = i + 1; j < m && !five; ++j)
      for (int k = j + 1; k < m && !five; ++k)
        five = region_count(g, {lines[i], lines[j], lines[k]}) == 5;
  REQUIRE(five);
  REQUIRE(region_count(g, lines) == g.tile_count());
}

TEST_CASE("hexagonal zig-zag lines are straight", "[zigzag]") {
  // in a pure hexagon tiling a zig-zag crosses opposite sides of every tile,
  // so the crossed-edge midpoints are collinear: a sharp independent check of
  // the alternation bookkeeping
  TileGraph g = build_disk(6, 1, 0, 100);
  auto lines = zigzag_lines(g);
  REQUIRE(!lines.empty());
  int long_lines = 0;
  for (const ZigZagLine& l : lines) {
    std::vector<Point> mids;
    for (auto [a, b] : l.edges) {
      int k = -1;
      for (int s = 0; s < g.sides[a]; ++s)
        if (g.adj[a][s] == b) k = s;
      REQUIRE(k >= 0);
      const Point& ca = g.corners[a][k];
      const Point& cb = g.corners[a][(k + 1) % g.sides[a]];
      mids.push_back({(ca.x + cb.x) / 2, (ca.y + cb.y) / 2, 0});
    }
    if (mids.size() < 3) continue;
    ++long_lines;
    double ux = mids.back().x - mids.front().x, uy = mids.back().y - mids.front().y;
    for (const Point& q : mids) {
      double cross = (q.x - mids.front().x) * uy - (q.y - mids.front().y) * ux;
      REQUIRE(std::abs(cross) < 1e-9 * std::max(1.0, std::abs(ux) + std::abs(uy)));
    }
  }
  REQUIRE(long_lines > 0);
}

TEST_CASE("line census matches an independent boundary-seeded tracer", "[zigzag]") {
  TileGraph disk10 = build_disk(7, 1, 0, 520);
  auto lines = zigzag_lines(disk10);
  std::multiset<EdgeSeq> mine;
  for (const ZigZagLine& l : lines) {
    REQUIRE_FALSE(l.cyclic);
    EdgeSeq n = normalized(l.edges);
    mine.insert(n);
    mine.insert(n);  // the oracle reaches every line from both of its ends
  }
  REQUIRE(mine == oracle_lines(disk10));
}

TEST_CASE("closed manifolds give cyclic lines, square grids are rejected", "[zigzag]") {
  // refined dodecahedral sphere: every line closes up on itself
  std::ifstream in(std::string(TESSOM_SOURCE_DATA_DIR) + "/manifolds/dodecahedron.glue");
  REQUIRE(in.good());
  PolyMap dodeca = parse_gluing_table(in);
  Development dev = develop(dodeca, 5, 3);
  TileGraph sphere = goldberg_refine(dodeca, 5, 3, dev, 2, 1);
  auto lines = zigzag_lines(sphere);
  REQUIRE(!lines.empty());
  std::map<std::pair<int, int>, int> mult;
  for (const ZigZagLine& l : lines) {
    REQUIRE(l.cyclic);
    for (auto& e : l.edges) mult[e]++;
  }
  REQUIRE((int)mult.size() == sphere.edge_count());
  for (auto& [e, m] : mult) REQUIRE(m == 2);

  // valence-4 tilings are out of scope
  TileGraph torus;
  torus.sides = {4};
  torus.adj = {{0, 0, 0, 0}};
  torus.back = {{1, 0, 3, 2}};
  torus.q = 4;
  REQUIRE_THROWS_AS(zigzag_lines(torus), std::domain_error);
}
