// SPDX-License-Identifier: Apache-2.0
// Zig-zag lines: maximal walks along tessellation edges that turn alternately
// left and right at every (valence-3) vertex. A line is stored as the ordered
// list of tile-graph edges it separates; on a disk each line cuts the tile
// graph into exactly two components, which is what the landscape embedding
// consumes.
#pragma once

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tessom/tile_graph.hpp"

namespace tessom {

struct ZigZagLine {
  int id = 0;
  bool cyclic = false;  // closed walk; terminating walks start and end at the rim
  std::vector<std::pair<int, int>> edges;  // crossed tile-graph edges, walk order
};

namespace zz_detail {

// A walk state: traversing the edge on side m of tile r, moving toward corner
// m+1 of r (hi) or corner m (!hi); the turn at that corner pivots around r.
// Polygon corner j sits between sides j-1 and j.
struct State {
  int r = -1, m = 0, hi = 0;
  bool live() const { return r >= 0; }
  bool operator==(const State& o) const { return r == o.r && m == o.m && hi == o.hi; }
};

class Tracer {
 public:
  explicit Tracer(const TileGraph& g) : g_(g) {
    if (g.q != 3)
      throw std::domain_error("zig-zag lines need valence-3 vertices (q = 3 tilings)");
    offset_.assign(g.tile_count() + 1, 0);
    for (int t = 0; t < g.tile_count(); ++t) offset_[t + 1] = offset_[t] + g.sides[t];
    // the corner-fan resolution below assumes no tile meets itself or any
    // neighbor along more than one edge
    for (int r = 0; r < g.tile_count(); ++r) {
      std::vector<int> nb;
      for (int n : g.adj[r])
        if (n >= 0) nb.push_back(n);
      std::sort(nb.begin(), nb.end());
      if (std::adjacent_find(nb.begin(), nb.end()) != nb.end() ||
          std::binary_search(nb.begin(), nb.end(), r))
        throw std::domain_error("zig-zag tracing needs a simple tile graph");
    }
    ori_.assign(offset_.back(), -1);
    for (int r = 0; r < g.tile_count(); ++r)
      for (int m = 0; m < g.sides[r]; ++m)
        if (g.adj[r][m] >= 0 && ori_[offset_[r] + m] < 0) resolve(r, m);
  }

  // Advance one tessellation edge; dead state on exit through the rim.
  State step(const State& s) const {
    int sr = g_.sides[s.r];
    int m2 = s.hi ? (s.m + 1) % sr : (s.m + sr - 1) % sr;
    if (g_.adj[s.r][m2] < 0) return {};
    int o = ori_[offset_[s.r] + m2];
    return {g_.adj[s.r][m2], g_.back[s.r][m2], o ? s.hi : !s.hi};
  }

  // The same traversal written from the other flank, heading the other way.
  State reversal(const State& s) const {
    int o = ori_[offset_[s.r] + s.m];
    return {g_.adj[s.r][s.m], g_.back[s.r][s.m], o ? !s.hi : s.hi};
  }

  int state_id(const State& s) const { return 2 * (offset_[s.r] + s.m) + s.hi; }
  int state_count() const { return 2 * offset_.back(); }

  const TileGraph& graph() const { return g_; }

 private:
  // Decide how side m of tile r lines up with the matching side of the
  // neighbor: 0 when the polygons traverse the shared edge in opposite corner
  // order (corner m+1 of r is corner mu of u), 1 when mirrored. Resolved from
  // the third tile of each endpoint vertex, so no global orientation or
  // geometry is needed.
  void resolve(int r, int m) {
    int u = g_.adj[r][m], mu = g_.back[r][m];
    int sr = g_.sides[r], su = g_.sides[u];
    int xa = g_.adj[r][(m + 1) % sr];            // third tile at corner m+1 of r
    int xb = g_.adj[r][(m + sr - 1) % sr];       // third tile at corner m of r
    int ua = g_.adj[u][(mu + su - 1) % su];      // u's fan candidates
    int ub = g_.adj[u][(mu + 1) % su];
    int vote = -1;                               // 0 opposite, 1 mirrored
    auto consider = [&](bool opp_match, bool mir_match, int third) {
      if (opp_match == mir_match) {
        // the true pairing always matches, so both-false is corrupt data and
        // both-true is only harmless when the endpoint is fully rimmed
        if (!opp_match || third >= 0)
          throw std::domain_error("zig-zag tracing: unresolvable vertex fan");
        return;  // both flanks rimmed: no information at this endpoint
      }
      int v = opp_match ? 0 : 1;
      if (vote >= 0 && vote != v)
        throw std::domain_error("zig-zag tracing: inconsistent vertex fans");
      vote = v;
    };
    consider(ua == xa, ub == xa, xa);  // corner m+1 of r is corner mu or mu+1 of u
    consider(ub == xb, ua == xb, xb);  // corner m   of r is corner mu+1 or mu of u
    if (vote < 0) vote = 0;  // fully rimmed edge: either pairing traces alike
    ori_[offset_[r] + m] = vote;
    ori_[offset_[u] + mu] = vote;
  }

  const TileGraph& g_;
  std::vector<int> offset_;
  std::vector<int> ori_;
};

}  // namespace zz_detail

// Every maximal alternating-turn walk with at least one internal edge. Each
// internal edge is traversed by exactly two of the returned lines (counted
// with multiplicity); walks that would only touch rim edges are not lines.
inline std::vector<ZigZagLine> zigzag_lines(const TileGraph& g) {
  zz_detail::Tracer tr(g);
  std::vector<char> used(tr.state_count(), 0);
  std::vector<ZigZagLine> out;

  auto trace = [&](zz_detail::State start) {
    ZigZagLine line;
    line.id = static_cast<int>(out.size());
    zz_detail::State cur = start;
    while (true) {
      used[tr.state_id(cur)] = 1;
      used[tr.state_id(tr.reversal(cur))] = 1;
      int other = g.adj[cur.r][cur.m];
      line.edges.emplace_back(std::min(cur.r, other), std::max(cur.r, other));
      zz_detail::State next = tr.step(cur);
      if (!next.live()) break;
      if (next == start) {
        line.cyclic = true;
        break;
      }
      cur = next;
    }
    out.push_back(std::move(line));
  };

  // terminating lines first: states whose backward extension leaves the disk
  for (int r = 0; r < g.tile_count(); ++r)
    for (int m = 0; m < g.sides[r]; ++m) {
      if (g.adj[r][m] < 0) continue;
      for (int hi = 0; hi < 2; ++hi) {
        zz_detail::State s{r, m, hi};
        if (!used[tr.state_id(s)] && !tr.step(tr.reversal(s)).live()) trace(s);
      }
    }
  // whatever remains sits on closed walks
  for (int r = 0; r < g.tile_count(); ++r)
    for (int m = 0; m < g.sides[r]; ++m) {
      if (g.adj[r][m] < 0) continue;
      for (int hi = 0; hi < 2; ++hi) {
        zz_detail::State s{r, m, hi};
        if (!used[tr.state_id(s)]) trace(s);
      }
    }
  return out;
}

// 0/1 component labels after deleting the line's crossings; a proper line
// leaves exactly two components.
inline std::vector<char> line_split(const TileGraph& g, const ZigZagLine& line) {
  std::set<std::pair<int, int>> cut(line.edges.begin(), line.edges.end());
  std::vector<char> label(g.tile_count(), -1);
  int comps = 0;
  for (int seed = 0; seed < g.tile_count(); ++seed) {
    if (label[seed] >= 0) continue;
    if (comps >= 2) throw std::domain_error("zig-zag line does not split the graph in two");
    std::deque<int> q{seed};
    label[seed] = static_cast<char>(comps);
    while (!q.empty()) {
      int t = q.front();
      q.pop_front();
      for (int n : g.adj[t]) {
        if (n < 0 || label[n] >= 0) continue;
        if (cut.count({std::min(t, n), std::max(t, n)})) continue;
        label[n] = static_cast<char>(comps);
        q.push_back(n);
      }
    }
    ++comps;
  }
  if (comps != 2) throw std::domain_error("zig-zag line does not split the graph in two");
  return label;
}

// Connected components left after deleting every crossing of every line: the
// cells of the line arrangement.
inline int region_count(const TileGraph& g, const std::vector<ZigZagLine>& lines) {
  std::set<std::pair<int, int>> cut;
  for (const ZigZagLine& l : lines) cut.insert(l.edges.begin(), l.edges.end());
  std::vector<char> seen(g.tile_count(), 0);
  int comps = 0;
  for (int seed = 0; seed < g.tile_count(); ++seed) {
    if (seen[seed]) continue;
    ++comps;
    std::deque<int> q{seed};
    seen[seed] = 1;
    while (!q.empty()) {
      int t = q.front();
      q.pop_front();
      for (int n : g.adj[t]) {
        if (n < 0 || seen[n]) continue;
        if (cut.count({std::min(t, n), std::max(t, n)})) continue;
        seen[n] = 1;
        q.push_back(n);
      }
    }
  }
  return comps;
}

}  // namespace tessom
