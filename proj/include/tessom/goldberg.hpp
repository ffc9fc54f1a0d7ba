// SPDX-License-Identifier: Apache-2.0
// Goldberg-Coxeter refinement GC(a,b) of {p,3} polygon maps. Every vertex of
// the base map carries a triangular chart over the Eisenstein lattice with
// corners 0, g, g*w (g = a+b*w); charts are glued along their edges by exact
// lattice similarities derived from the base pairings. Tiles are the merged
// lattice points: base-face corners become p-gons, everything else hexagons.
// Reversing pairings need conj(g) ~ g up to a unit, i.e. b == 0 or a == b;
// orientable bases should be passed through oriented_copy first so chiral
// refinements stay available.
#pragma once

#include <algorithm>
#include <array>
#include <complex>
#include <map>
#include <stdexcept>
#include <vector>

#include "tessom/develop.hpp"
#include "tessom/eisenstein.hpp"
#include "tessom/poly_map.hpp"
#include "tessom/tile_graph.hpp"

namespace tessom {

namespace gc_detail {

// Lattice similarity between two charts: z -> u*z + c or u*conj(z) + c.
struct EdgeMap {
  int other = -1;
  bool rev = false;
  Eis u{1, 0}, c{0, 0};
  Eis map(const Eis& z) const {
    Eis w = rev ? eis_conj(z) : z;
    return eis_add(eis_mul(u, w), c);
  }
};

struct Chart {
  std::array<PolyMap::FanEntry, 3> fan{};
  std::array<Isometry, 3> local;  // base-face transforms developed around this vertex
  std::array<EdgeMap, 3> edge;    // by corner-pair slot; other = -1 when open
};

// slot index for the unordered corner pair {i,j} in {0,1,2}
inline int pair_slot(int i, int j) {
  int s = i + j;
  return s == 1 ? 0 : (s == 3 ? 1 : 2);
}

struct Lattice {
  Eis g, gw;
  std::array<Eis, 3> Q;
  explicit Lattice(int a, int b) : g{a, b}, gw(eis_mul(g, Eis{0, 1})) {
    Q = {Eis{0, 0}, g, gw};
  }
  long long side_cross(const Eis& z, int slot) const {
    int i = slot, j = (slot + 1) % 3;  // slot 0: edge 0->1, 1: 1->2, 2: 2->0
    return eis_cross(eis_sub(Q[j], Q[i]), eis_sub(z, Q[i]));
  }
  bool inside(const Eis& z) const {
    return side_cross(z, 0) >= 0 && side_cross(z, 1) >= 0 && side_cross(z, 2) >= 0;
  }
  // unique strictly violated side for a point one step outside
  int exit_slot(const Eis& z) const {
    int found = -1;
    for (int s = 0; s < 3; ++s)
      if (side_cross(z, s) < 0) {
        if (found >= 0) throw std::logic_error("refinement: ambiguous chart exit");
        found = s;
      }
    if (found < 0) throw std::logic_error("refinement: expected an exterior point");
    return found;
  }
  bool on_slot_segment(const Eis& z, int slot) const {
    if (side_cross(z, slot) != 0) return false;
    const Eis& a = Q[slot];
    const Eis& b = Q[(slot + 1) % 3];
    Eis d = eis_sub(b, a), v = eis_sub(z, a);
    long long t = d.x * v.x + d.y * v.y;  // monotone along the segment
    long long n = d.x * d.x + d.y * d.y;
    return t >= 0 && t <= n;
  }
};

inline std::complex<double> to_c(const Eis& z) {
  return {z.x + 0.5 * z.y, 0.8660254037844386467637231707529362 * z.y};
}

// Adjacency slot provenance for polygon-corner construction. `re` re-anchors
// the slot's chart so the tile lands in its own copy of the quotient domain.
struct SlotRef {
  int chart = -1;
  Eis anchor{0, 0};
  int unit = 0;   // index into kEisUnits
  int sweep = 1;  // +-1, local rotation sense
  Isometry re{};
};

inline int unit_index(const Eis& u) {
  for (int i = 0; i < 6; ++i)
    if (kEisUnits[i] == u) return i;
  throw std::logic_error("refinement: direction is not a lattice unit");
}

}  // namespace gc_detail

// GC(1,0): the base map itself as a tile graph.
inline TileGraph base_tile_graph(const PolyMap& base, int p, int q, const Development& dev) {
  TileGraph tg;
  int n = base.face_count();
  tg.sides = base.sides;
  tg.adj.assign(n, {});
  tg.back.assign(n, {});
  tg.kind.assign(n, TileKind::corner);
  tg.base_face.resize(n);
  tg.geometry = dev.sg.g;
  tg.p = p;
  tg.q = q;
  tg.gc_a = 1;
  tg.gc_b = 0;
  tg.closed = true;
  for (int f = 0; f < n; ++f) {
    tg.base_face[f] = f;
    tg.adj[f].assign(base.sides[f], -1);
    tg.back[f].assign(base.sides[f], -1);
    for (int s = 0; s < base.sides[f]; ++s) {
      const auto& h = base.glue[f][s];
      if (h.f < 0) {
        tg.closed = false;
        continue;
      }
      tg.adj[f][s] = h.f;
      tg.back[f][s] = h.s;
    }
    tg.centers.push_back(dev.face_center(f));
    std::vector<Point> poly;
    for (int c = 0; c < base.sides[f]; ++c)
      poly.push_back(apply(dev.face_xform[f], canonical_corner(dev.sg, c)));
    tg.corners.push_back(std::move(poly));
  }
  for (const auto& h : dev.holonomies) {
    bool dup = false;
    for (const auto& d : tg.decks) dup = dup || matrix_distance(d, h.deck) < 1e-6;
    if (!dup) tg.decks.push_back(h.deck);
  }
  tg.orientable = base.orientable();
  if (tg.closed) tg.euler = base.euler_characteristic();
  tg.check_symmetric();
  return tg;
}

inline TileGraph goldberg_refine(const PolyMap& base, int p, int q, const Development& dev,
                                 int a, int b) {
  using namespace gc_detail;
  if (a < 1 || b < 0) throw std::domain_error("refinement parameters require a >= 1, b >= 0");
  if (a == 1 && b == 0) return base_tile_graph(base, p, q, dev);
  if (q != 3)
    throw std::domain_error("refinement requires three faces around every vertex");
  for (int k : base.sides)
    if (k != p) throw std::domain_error("refinement requires a uniform {p,3} map");

  const SchlafliGeometry& sg = dev.sg;
  const int n_faces = base.face_count();
  Lattice lat(a, b);
  const Eis centroid3 = eis_add(lat.g, lat.gw);  // 3 * triangle centroid

  // --- boundary-tolerant vertex orbits -------------------------------------
  std::vector<std::vector<PolyMap::FanEntry>> fans;
  std::vector<char> closed_fan;
  std::vector<std::vector<int>> orb(n_faces), pos(n_faces);
  for (int f = 0; f < n_faces; ++f) {
    orb[f].assign(p, -1);
    pos[f].assign(p, -1);
  }
  for (int f = 0; f < n_faces; ++f)
    for (int c = 0; c < p; ++c) {
      if (orb[f][c] >= 0) continue;
      std::vector<PolyMap::FanEntry> fan;
      bool closed = true;
      PolyMap::FanEntry e{f, c, +1};
      for (int step = 0; step < 4096; ++step) {
        fan.push_back(e);
        e = base.fan_step(e);
        if (e.f < 0) {
          closed = false;
          break;
        }
        if (e.f == f && e.c == c && e.dir == +1) break;
        if (step == 4095) throw std::domain_error("vertex walk did not close");
      }
      if (!closed) {  // extend backwards from the seed to the other boundary
        e = {f, c, -1};
        for (int step = 0; step < 4096; ++step) {
          e = base.fan_step(e);
          if (e.f < 0) break;
          fan.insert(fan.begin(), {e.f, e.c, -e.dir});
        }
      }
      if (closed && (int)fan.size() != q)
        throw std::domain_error("refinement requires three faces around every vertex");
      int id = (int)fans.size();
      for (size_t i = 0; i < fan.size(); ++i) {
        if (orb[fan[i].f][fan[i].c] >= 0)
          throw std::domain_error("vertex walk revisits a corner");
        orb[fan[i].f][fan[i].c] = id;
        pos[fan[i].f][fan[i].c] = (int)i;
      }
      fans.push_back(std::move(fan));
      closed_fan.push_back(closed);
    }

  // --- charts over closed orbits -------------------------------------------
  int n_charts = (int)fans.size();
  std::vector<Chart> charts(n_charts);
  std::vector<char> has_chart(n_charts, 0);
  auto crossed_side = [&](const PolyMap::FanEntry& e) {
    return e.dir > 0 ? e.c : (e.c + p - 1) % p;
  };
  for (int t = 0; t < n_charts; ++t) {
    if (!closed_fan[t]) continue;
    Chart& ch = charts[t];
    for (int k = 0; k < 3; ++k) ch.fan[k] = fans[t][k];
    ch.local[0] = dev.face_xform[ch.fan[0].f];
    for (int k = 0; k < 2; ++k) {
      int s = crossed_side(ch.fan[k]);
      const auto& h = base.glue[ch.fan[k].f][s];
      ch.local[k + 1] = neighbor_transform(sg, ch.local[k], s, h.s, h.rev);
    }
    // the development of three corners around one vertex closes exactly
    int s2 = crossed_side(ch.fan[2]);
    const auto& h2 = base.glue[ch.fan[2].f][s2];
    Isometry back_to_first = neighbor_transform(sg, ch.local[2], s2, h2.s, h2.rev);
    if (matrix_distance(back_to_first, ch.local[0]) > 1e-6)
      throw std::logic_error("refinement: vertex development did not close");
    has_chart[t] = 1;
  }

  // --- lattice points per chart ---------------------------------------------
  std::vector<std::pair<int, Eis>> pts;
  std::vector<std::map<std::pair<long long, long long>, int>> chart_pt(n_charts);
  long long xlo = std::min({lat.Q[0].x, lat.Q[1].x, lat.Q[2].x});
  long long xhi = std::max({lat.Q[0].x, lat.Q[1].x, lat.Q[2].x});
  long long ylo = std::min({lat.Q[0].y, lat.Q[1].y, lat.Q[2].y});
  long long yhi = std::max({lat.Q[0].y, lat.Q[1].y, lat.Q[2].y});
  for (int t = 0; t < n_charts; ++t) {
    if (!has_chart[t]) continue;
    for (long long x = xlo; x <= xhi; ++x)
      for (long long y = ylo; y <= yhi; ++y) {
        Eis z{x, y};
        if (!lat.inside(z)) continue;
        chart_pt[t][{x, y}] = (int)pts.size();
        pts.push_back({t, z});
      }
  }
  auto pid_at = [&](int t, const Eis& z) {
    auto it = chart_pt[t].find({z.x, z.y});
    if (it == chart_pt[t].end())
      throw std::logic_error("refinement: missing mapped lattice point");
    return it->second;
  };

  // --- transitions across base edges ----------------------------------------
  for (int fA = 0; fA < n_faces; ++fA)
    for (int sA = 0; sA < p; ++sA) {
      const auto& h = base.glue[fA][sA];
      if (h.f < 0) continue;
      if (h.f < fA || (h.f == fA && h.s < sA)) continue;  // handle each edge once
      int fB = h.f, sB = h.s;
      bool rev = h.rev;
      int T = orb[fA][sA], Tp = orb[fA][(sA + 1) % p];
      if (!has_chart[T] || !has_chart[Tp]) continue;
      int iA = pos[fA][sA];
      int dA = fans[T][iA].dir;
      int iB = dA > 0 ? (iA + 1) % 3 : (iA + 2) % 3;
      int iAp = pos[fA][(sA + 1) % p];
      int dAp = fans[Tp][iAp].dir;
      int iBp = dAp < 0 ? (iAp + 1) % 3 : (iAp + 2) % 3;
      if (fans[T][iB].f != fB || fans[Tp][iBp].f != fB)
        throw std::logic_error("refinement: fan does not bracket the crossed edge");
      if (fans[T][iB].c != (rev ? sB : (sB + 1) % p) ||
          fans[Tp][iBp].c != (rev ? (sB + 1) % p : sB))
        throw std::logic_error("refinement: pairing corner mismatch");

      bool preserve = dA == dAp;
      Eis dT = eis_sub(lat.Q[iA], lat.Q[iB]);
      Eis dTp = eis_sub(lat.Q[iAp], lat.Q[iBp]);
      EdgeMap em;
      em.other = Tp;
      em.rev = !preserve;
      try {
        em.u = preserve ? eis_div(dTp, dT) : eis_div(dTp, eis_conj(dT));
      } catch (const std::domain_error&) {
        throw std::domain_error(
            "refinement of a reversing pairing requires b == 0 or a == b");
      }
      em.c = eis_sub(lat.Q[iAp], eis_mul(em.u, preserve ? lat.Q[iA] : eis_conj(lat.Q[iA])));
      if (!(em.map(lat.Q[iA]) == lat.Q[iAp]) || !(em.map(lat.Q[iB]) == lat.Q[iBp]))
        throw std::logic_error("refinement: transition endpoint mismatch");

      EdgeMap inv;
      inv.other = T;
      inv.rev = em.rev;
      if (!em.rev) {
        inv.u = eis_div(Eis{1, 0}, em.u);
        inv.c = eis_neg(eis_mul(inv.u, em.c));
      } else {
        inv.u = eis_conj(eis_div(Eis{1, 0}, em.u));
        inv.c = eis_neg(eis_mul(inv.u, eis_conj(em.c)));
      }
      if (!(inv.map(lat.Q[iAp]) == lat.Q[iA]) || !(inv.map(lat.Q[iBp]) == lat.Q[iB]))
        throw std::logic_error("refinement: inverse transition mismatch");

      int slotA = pair_slot(iA, iB), slotB = pair_slot(iAp, iBp);
      if (charts[T].edge[slotA].other >= 0 || charts[Tp].edge[slotB].other >= 0)
        throw std::logic_error("refinement: base map is too small for charts");
      charts[T].edge[slotA] = em;
      charts[Tp].edge[slotB] = inv;
    }

  // --- union-find over lattice points ----------------------------------------
  std::vector<int> uf(pts.size());
  for (size_t i = 0; i < uf.size(); ++i) uf[i] = (int)i;
  auto find = [&](int x) {
    while (uf[x] != x) {
      uf[x] = uf[uf[x]];
      x = uf[x];
    }
    return x;
  };
  auto unite = [&](int x, int y) {
    x = find(x);
    y = find(y);
    if (x == y) return;
    if (x < y)
      uf[y] = x;
    else
      uf[x] = y;
  };
  // merge the p chart corners of each base face
  std::vector<int> face_first(n_faces, -1);
  for (int t = 0; t < n_charts; ++t) {
    if (!has_chart[t]) continue;
    for (int k = 0; k < 3; ++k) {
      int f = charts[t].fan[k].f;
      int pid = pid_at(t, lat.Q[k]);
      if (face_first[f] < 0)
        face_first[f] = pid;
      else
        unite(face_first[f], pid);
    }
  }
  // merge lattice points along glued chart edges
  for (int t = 0; t < n_charts; ++t) {
    if (!has_chart[t]) continue;
    for (int slot = 0; slot < 3; ++slot) {
      const EdgeMap& em = charts[t].edge[slot];
      if (em.other < 0) continue;
      for (const auto& [key, pid] : chart_pt[t]) {
        Eis z{key.first, key.second};
        if (!lat.on_slot_segment(z, slot)) continue;
        unite(pid, pid_at(em.other, em.map(z)));
      }
    }
  }

  // --- tiles -------------------------------------------------------------------
  std::vector<int> tile_of(pts.size(), -1);
  std::vector<int> root_tile;
  int n_tiles = 0;
  for (size_t i = 0; i < pts.size(); ++i) {
    int r = find((int)i);
    if (tile_of[r] < 0) tile_of[r] = n_tiles++;
    tile_of[i] = tile_of[r];
  }
  (void)root_tile;

  TileGraph tg;
  tg.sides.assign(n_tiles, 6);
  tg.adj.assign(n_tiles, {});
  tg.back.assign(n_tiles, {});
  tg.kind.assign(n_tiles, TileKind::hexagon);
  tg.base_face.assign(n_tiles, -1);
  tg.centers.assign(n_tiles, Point{});
  tg.corners.assign(n_tiles, {});
  tg.geometry = sg.g;
  tg.p = p;
  tg.q = 3;
  tg.gc_a = a;
  tg.gc_b = b;

  std::vector<std::pair<int, Eis>> rep(n_tiles, {-1, Eis{0, 0}});  // first point
  for (size_t i = 0; i < pts.size(); ++i) {
    int t = tile_of[i];
    if (rep[t].first < 0) rep[t] = pts[i];
  }
  // classify: face corners first, then centroids
  for (int f = 0; f < n_faces; ++f)
    if (face_first[f] >= 0) {
      int t = tile_of[face_first[f]];
      tg.kind[t] = TileKind::corner;
      tg.base_face[t] = f;
      tg.sides[t] = p;
    }
  for (size_t i = 0; i < pts.size(); ++i) {
    int t = tile_of[i];
    if (tg.kind[t] == TileKind::corner) continue;
    Eis z3{3 * pts[i].second.x, 3 * pts[i].second.y};
    if (z3 == centroid3) tg.kind[t] = TileKind::centroid;
  }

  // --- geometry helpers ---------------------------------------------------------
  std::complex<double> gc = to_c(lat.g);
  auto blend = [&](int chart_id, std::complex<double> w) {
    w /= gc;
    double beta = w.imag() / 0.8660254037844386467637231707529362;
    double alpha = w.real() - beta / 2;
    double l0 = 1 - alpha - beta;
    const Chart& ch = charts[chart_id];
    Point acc{};
    acc.g = sg.g;
    Point c0 = apply(ch.local[0], origin(sg.g));
    Point c1 = apply(ch.local[1], origin(sg.g));
    Point c2 = apply(ch.local[2], origin(sg.g));
    acc.x = l0 * c0.x + alpha * c1.x + beta * c2.x;
    acc.y = l0 * c0.y + alpha * c1.y + beta * c2.y;
    acc.z = l0 * c0.z + alpha * c1.z + beta * c2.z;
    return normalized(acc);
  };
  for (int t = 0; t < n_tiles; ++t) {
    if (tg.kind[t] == TileKind::corner)
      tg.centers[t] = dev.face_center(tg.base_face[t]);
    else
      tg.centers[t] = blend(rep[t].first, to_c(rep[t].second));
  }

  // --- lattice edge classes ---------------------------------------------------
  // Darts (point, unit) merged across reversals and chart transitions give an
  // exact identity for every refined edge; back-references and multi-edges
  // between small tiles resolve through them.
  std::vector<int> duf(pts.size() * 6);
  for (size_t i = 0; i < duf.size(); ++i) duf[i] = (int)i;
  auto dfind = [&](int x) {
    while (duf[x] != x) {
      duf[x] = duf[duf[x]];
      x = duf[x];
    }
    return x;
  };
  auto dunite = [&](int x, int y) {
    x = dfind(x);
    y = dfind(y);
    if (x == y) return;
    if (x < y)
      duf[y] = x;
    else
      duf[x] = y;
  };
  auto trans_dir = [&](const EdgeMap& em, const Eis& u) {
    return em.rev ? eis_mul(em.u, eis_conj(u)) : eis_mul(em.u, u);
  };
  for (size_t i = 0; i < pts.size(); ++i) {
    auto [T, z] = pts[i];
    for (int ui = 0; ui < 6; ++ui) {
      Eis nz = eis_add(z, kEisUnits[ui]);
      if (lat.inside(nz)) {
        dunite((int)(6 * i + ui), 6 * pid_at(T, nz) + (ui + 3) % 6);
        continue;
      }
      // A dart leaving the chart is redundant unless one transition lands it
      // on a chart point; every real edge is reached from the endpoint whose
      // image is interior, so anything else can be skipped.
      int neg = -1, negs = 0;
      for (int s = 0; s < 3; ++s)
        if (lat.side_cross(nz, s) < 0) {
          neg = s;
          ++negs;
        }
      if (negs != 1) continue;
      const EdgeMap& em = charts[T].edge[neg];
      if (em.other < 0) continue;
      Eis mapped = em.map(nz);
      if (!lat.inside(mapped)) continue;
      Eis dir = trans_dir(em, eis_neg(kEisUnits[ui]));
      dunite((int)(6 * i + ui), 6 * pid_at(em.other, mapped) + unit_index(dir));
    }
  }
  for (int t = 0; t < n_charts; ++t) {
    if (!has_chart[t]) continue;
    for (int slot = 0; slot < 3; ++slot) {
      const EdgeMap& em = charts[t].edge[slot];
      if (em.other < 0) continue;
      for (const auto& [key, pid] : chart_pt[t]) {
        Eis z{key.first, key.second};
        if (!lat.on_slot_segment(z, slot)) continue;
        int pid2 = pid_at(em.other, em.map(z));
        for (int ui = 0; ui < 6; ++ui)
          dunite(6 * pid + ui, 6 * pid2 + unit_index(trans_dir(em, kEisUnits[ui])));
      }
    }
  }

  // --- adjacency ------------------------------------------------------------------
  std::vector<std::vector<SlotRef>> slots(n_tiles);
  std::vector<std::vector<int>> slot_class(n_tiles);
  auto dart_class = [&](int chart_id, const Eis& z, int ui) {
    return dfind(6 * pid_at(chart_id, z) + ui);
  };
  auto neighbor_tile = [&](int chart_id, const Eis& nz) -> int {
    if (lat.inside(nz)) return tile_of[pid_at(chart_id, nz)];
    int slot = lat.exit_slot(nz);
    const EdgeMap& em = charts[chart_id].edge[slot];
    if (em.other < 0) return -1;
    Eis mapped = em.map(nz);
    if (!lat.inside(mapped)) throw std::logic_error("refinement: mapped point not in chart");
    return tile_of[pid_at(em.other, mapped)];
  };
  for (int t = 0; t < n_tiles; ++t) {
    if (tg.kind[t] != TileKind::corner) {
      auto [T, z] = rep[t];
      for (int i = 0; i < 6; ++i) {
        tg.adj[t].push_back(neighbor_tile(T, eis_add(z, kEisUnits[i])));
        slots[t].push_back({T, z, i, +1, Isometry{}});
        slot_class[t].push_back(dart_class(T, z, i));
      }
      continue;
    }
    // corner tile: sweep the p vertex charts around the base face
    int f = tg.base_face[t];
    std::vector<int> nb, cls;
    std::vector<SlotRef> sl;
    for (int c = 0; c < p; ++c) {
      int T = orb[f][c];
      if (T < 0 || !has_chart[T]) {  // open wedge on a patch boundary
        // With b == 0 the tile sides line up with the wedge seams, so a side
        // is missing only between two consecutive open wedges; the seam tiles
        // flanking an open run still live in the present charts.
        int Tq = orb[f][(c + p - 1) % p];
        if (b != 0 || Tq < 0 || !has_chart[Tq]) {
          nb.push_back(-1);
          cls.push_back(-1);
          sl.push_back({-1, Eis{0, 0}, 0, +1, Isometry{}});
        }
        continue;
      }
      int k = pos[f][c];
      int dir = fans[T][k].dir;
      int prev_k = dir > 0 ? (k + 2) % 3 : (k + 1) % 3;  // across side c-1
      int next_k = dir > 0 ? (k + 1) % 3 : (k + 2) % 3;  // across side c
      Eis e_prev = eis_sub(lat.Q[prev_k], lat.Q[k]);
      Eis e_next = eis_sub(lat.Q[next_k], lat.Q[k]);
      int sweep = eis_cross(e_prev, e_next) > 0 ? +1 : -1;
      std::vector<int> cone;
      for (int ui = 0; ui < 6; ++ui) {
        const Eis& u = kEisUnits[ui];
        if (eis_cross(e_prev, u) * sweep >= 0 && eis_cross(u, e_next) * sweep >= 0)
          cone.push_back(ui);
      }
      std::sort(cone.begin(), cone.end(), [&](int u1, int u2) {
        return eis_cross(kEisUnits[u1], kEisUnits[u2]) * sweep > 0;
      });
      if (cone.empty() || cone.size() > 2)
        throw std::logic_error("refinement: corner wedge unit count");
      Isometry re = compose(dev.face_xform[f], inverse(charts[T].local[k]));
      for (int ui : cone) {
        nb.push_back(tile_of[pid_at(T, eis_add(lat.Q[k], kEisUnits[ui]))]);
        cls.push_back(dart_class(T, lat.Q[k], ui));
        sl.push_back({T, lat.Q[k], ui, sweep, re});
      }
    }
    // shared chart-edge tiles appear at consecutive wedge seams; drop repeats
    std::vector<int> nb2, cls2;
    std::vector<SlotRef> sl2;
    for (size_t i = 0; i < nb.size(); ++i) {
      size_t prev = (i + nb.size() - 1) % nb.size();
      if (nb[i] >= 0 && nb[i] == nb[prev]) continue;
      nb2.push_back(nb[i]);
      cls2.push_back(cls[i]);
      sl2.push_back(sl[i]);
    }
    if ((int)nb2.size() != p)
      throw std::logic_error("refinement: corner tile degree mismatch");
    tg.adj[t] = std::move(nb2);
    slot_class[t] = std::move(cls2);
    slots[t] = std::move(sl2);
  }

  // --- back indices: match by exact lattice edge class ---------------------------
  for (int t = 0; t < n_tiles; ++t) tg.back[t].assign(tg.adj[t].size(), -1);
  for (int t = 0; t < n_tiles; ++t)
    for (size_t i = 0; i < tg.adj[t].size(); ++i) {
      int n = tg.adj[t][i];
      if (n < 0) continue;
      int found = -1;
      for (size_t j = 0; j < tg.adj[n].size(); ++j) {
        if (tg.adj[n][j] != t || slot_class[n][j] != slot_class[t][i]) continue;
        if (n == t && j == i) continue;  // a self-loop pairs its two slots
        if (found >= 0) throw std::logic_error("refinement: duplicated edge class");
        found = (int)j;
      }
      if (found < 0) throw std::logic_error("refinement: asymmetric adjacency");
      tg.back[t][i] = found;
    }

  // --- polygon corners -----------------------------------------------------------
  for (int t = 0; t < n_tiles; ++t) {
    int deg = (int)tg.adj[t].size();
    tg.corners[t].assign(deg, tg.centers[t]);
    for (int j = 0; j < deg; ++j) {
      // polygon corner j sits between sides j-1 and j
      const SlotRef& s = slots[t][(j + deg - 1) % deg];
      if (s.chart < 0) continue;  // boundary filler, keeps the center
      const Eis& u = kEisUnits[s.unit];
      const Eis& u2 = kEisUnits[(s.unit + s.sweep + 6) % 6];
      std::complex<double> w =
          (3.0 * to_c(s.anchor) + to_c(u) + to_c(u2)) / 3.0;
      tg.corners[t][j] = apply(s.re, blend(s.chart, w));
    }
  }

  // --- bookkeeping -----------------------------------------------------------------
  tg.closed = true;
  for (int t = 0; t < n_tiles; ++t)
    for (int n : tg.adj[t]) tg.closed = tg.closed && n >= 0;
  tg.orientable = base.orientable();
  if (tg.closed) {
    // Euler characteristic of a closed trivalent tiling: chi = n - E + 2E/3
    long long E = tg.edge_count();
    tg.euler = (int)(n_tiles - E + (2 * E) / 3);
  }
  for (const auto& h : dev.holonomies) {
    bool dup = false;
    for (const auto& d : tg.decks) dup = dup || matrix_distance(d, h.deck) < 1e-6;
    if (!dup) tg.decks.push_back(h.deck);
  }
  tg.check_symmetric();
  return tg;
}

}  // namespace tessom
