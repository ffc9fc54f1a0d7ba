// SPDX-License-Identifier: Apache-2.0
// Combinatorial polygon maps: faces with cyclically ordered sides plus side
// pairings. Side s of a face runs from corner s to corner s+1 (mod sides).
// A pairing (A,sA)~(B,sB) is orientation-compatible ("N") — corner sA maps
// to corner sB+1 and sA+1 to sB — or reversing ("R") — sA to sB, sA+1 to
// sB+1. Vertex cycles, orientability and Euler characteristic all derive
// from this convention.
#pragma once

#include <cstdio>
#include <array>
#include <deque>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace tessom {

struct PolyMap {
  struct Half {
    int f = -1, s = -1;
    bool rev = false;
  };

  std::vector<int> sides;               // per face
  std::vector<std::vector<Half>> glue;  // [face][side] -> partner

  int face_count() const { return static_cast<int>(sides.size()); }

  void resize(const std::vector<int>& side_counts) {
    sides = side_counts;
    glue.assign(sides.size(), {});
    for (size_t f = 0; f < sides.size(); ++f) glue[f].assign(sides[f], Half{});
  }

  int add_face(int k) {
    if (k < 1) throw std::domain_error("add_face: bad side count");
    sides.push_back(k);
    glue.emplace_back(k, Half{});
    return face_count() - 1;
  }

  void add_glue(int fa, int sa, int fb, int sb, bool rev) {
    if (glue[fa][sa].f >= 0 || glue[fb][sb].f >= 0)
      throw std::domain_error("gluing table: side paired twice");
    if (fa == fb && sa == sb)
      throw std::domain_error("gluing table: side glued to itself");
    glue[fa][sa] = {fb, sb, rev};
    glue[fb][sb] = {fa, sa, rev};
  }

  int edge_count() const {
    int darts = 0;
    for (int k : sides) darts += k;
    return darts / 2;
  }

  void validate() const {
    for (int f = 0; f < face_count(); ++f) {
      if (sides[f] < 1) throw std::domain_error("gluing table: empty face");
      for (int s = 0; s < sides[f]; ++s) {
        const Half& h = glue[f][s];
        if (h.f < 0) throw std::domain_error("gluing table: unpaired side");
        const Half& r = glue[h.f][h.s];
        if (r.f != f || r.s != s || r.rev != h.rev)
          throw std::domain_error("gluing table: asymmetric pairing");
      }
    }
  }

  bool connected() const {
    if (face_count() == 0) return true;
    std::vector<char> seen(face_count(), 0);
    std::deque<int> q{0};
    seen[0] = 1;
    int cnt = 1;
    while (!q.empty()) {
      int f = q.front();
      q.pop_front();
      for (const Half& h : glue[f])
        if (h.f >= 0 && !seen[h.f]) {
          seen[h.f] = 1;
          ++cnt;
          q.push_back(h.f);
        }
    }
    return cnt == face_count();
  }

  // Propagate a local orientation across pairings; N keeps it, R flips it.
  bool orientable() const {
    std::vector<int> sign(face_count(), 0);
    for (int start = 0; start < face_count(); ++start) {
      if (sign[start]) continue;
      sign[start] = 1;
      std::deque<int> q{start};
      while (!q.empty()) {
        int f = q.front();
        q.pop_front();
        for (const Half& h : glue[f]) {
          if (h.f < 0) continue;
          int want = h.rev ? -sign[f] : sign[f];
          if (sign[h.f] == 0) {
            sign[h.f] = want;
            q.push_back(h.f);
          } else if (sign[h.f] != want) {
            return false;
          }
        }
      }
    }
    return true;
  }

  // One step of the rotation around the vertex at corner (f,c). dir=+1 means
  // the next crossed side is c, dir=-1 means side c-1.
  struct FanEntry {
    int f, c, dir;
  };

  FanEntry fan_step(const FanEntry& e) const {
    int k = sides[e.f];
    int s = e.dir > 0 ? e.c : (e.c + k - 1) % k;
    const Half& h = glue[e.f][s];
    if (h.f < 0) return {-1, -1, 0};  // open boundary
    int nd = h.rev ? -e.dir : e.dir;
    int nc = nd > 0 ? (h.s + 1) % sides[h.f] : h.s;
    return {h.f, nc, nd};
  }

  // Full cyclic fan around the vertex at corner (f,c); throws if the walk
  // does not close (malformed table) within `cap` steps.
  std::vector<FanEntry> vertex_fan(int f, int c, int cap = 4096) const {
    std::vector<FanEntry> fan;
    FanEntry e{f, c, +1};
    for (int i = 0; i < cap; ++i) {
      fan.push_back(e);
      e = fan_step(e);
      if (e.f < 0) throw std::domain_error("vertex walk hit an unpaired side");
      if (e.f == f && e.c == c && e.dir == +1) return fan;
    }
    throw std::domain_error("vertex walk did not close");
  }

  // All vertex orbits; also fills corner -> (orbit, position) lookup.
  std::vector<std::vector<FanEntry>> vertex_orbits(
      std::vector<std::vector<int>>* corner_orbit = nullptr,
      std::vector<std::vector<int>>* corner_pos = nullptr) const {
    std::vector<std::vector<FanEntry>> orbits;
    std::vector<std::vector<int>> orb(face_count()), pos(face_count());
    for (int f = 0; f < face_count(); ++f) {
      orb[f].assign(sides[f], -1);
      pos[f].assign(sides[f], -1);
    }
    for (int f = 0; f < face_count(); ++f)
      for (int c = 0; c < sides[f]; ++c) {
        if (orb[f][c] >= 0) continue;
        auto fan = vertex_fan(f, c);
        int id = static_cast<int>(orbits.size());
        for (size_t i = 0; i < fan.size(); ++i) {
          if (orb[fan[i].f][fan[i].c] >= 0)
            throw std::domain_error("vertex walk revisits a corner");
          orb[fan[i].f][fan[i].c] = id;
          pos[fan[i].f][fan[i].c] = static_cast<int>(i);
        }
        orbits.push_back(std::move(fan));
      }
    if (corner_orbit) *corner_orbit = std::move(orb);
    if (corner_pos) *corner_pos = std::move(pos);
    return orbits;
  }

  int vertex_count() const { return static_cast<int>(vertex_orbits().size()); }

  int euler_characteristic() const {
    return face_count() - edge_count() + vertex_count();
  }
};

// Relabel the sides of a consistent set of faces so every pairing becomes
// orientation-compatible ("N"). Propagates a sign to each face as in
// orientable(); faces with negative sign are flipped (side s -> k-1-s),
// which reverses each of their edge traversals, so a pairing's flag toggles
// once per flipped endpoint. Throws on non-orientable maps.
inline PolyMap oriented_copy(const PolyMap& m, std::vector<char>* flipped_out = nullptr) {
  std::vector<int> sign(m.face_count(), 0);
  for (int start = 0; start < m.face_count(); ++start) {
    if (sign[start]) continue;
    sign[start] = 1;
    std::deque<int> q{start};
    while (!q.empty()) {
      int f = q.front();
      q.pop_front();
      for (const PolyMap::Half& h : m.glue[f]) {
        if (h.f < 0) continue;
        int want = h.rev ? -sign[f] : sign[f];
        if (sign[h.f] == 0) {
          sign[h.f] = want;
          q.push_back(h.f);
        } else if (sign[h.f] != want) {
          throw std::domain_error("oriented_copy: map is not orientable");
        }
      }
    }
  }
  PolyMap out;
  out.resize(m.sides);
  auto relabel = [&](int f, int s) { return sign[f] < 0 ? m.sides[f] - 1 - s : s; };
  for (int f = 0; f < m.face_count(); ++f)
    for (int s = 0; s < m.sides[f]; ++s) {
      const PolyMap::Half& h = m.glue[f][s];
      if (h.f < 0) continue;
      bool rev = h.rev ^ (sign[f] < 0) ^ (sign[h.f] < 0);
      out.glue[f][relabel(f, s)] = {h.f, relabel(h.f, h.s), rev};
    }
  if (flipped_out) {
    flipped_out->assign(m.face_count(), 0);
    for (int f = 0; f < m.face_count(); ++f) (*flipped_out)[f] = sign[f] < 0;
  }
  return out;
}

inline PolyMap parse_gluing_table(std::istream& in) {
  PolyMap m;
  std::string line, word;
  int nfaces = -1;
  std::vector<int> counts;
  std::vector<std::array<int, 5>> glues;  // fa sa fb sb rev
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    if (!(ls >> word) || word[0] == '#') continue;
    auto bad = [&](const char* why) {
      throw std::domain_error("gluing table line " + std::to_string(lineno) + ": " + why);
    };
    if (word == "faces") {
      if (!(ls >> nfaces) || nfaces < 1) bad("bad face count");
      counts.assign(nfaces, 0);
    } else if (word == "face") {
      int id, k;
      if (!(ls >> id >> k)) bad("bad face line");
      if (nfaces < 0 || id < 0 || id >= nfaces) bad("face id out of range");
      if (k < 1) bad("bad side count");
      counts[id] = k;
    } else if (word == "glue") {
      int fa, sa, fb, sb;
      std::string flag;
      if (!(ls >> fa >> sa >> fb >> sb >> flag)) bad("bad glue line");
      if (flag != "R" && flag != "N") bad("glue flag must be R or N");
      glues.push_back({fa, sa, fb, sb, flag == "R" ? 1 : 0});
    } else {
      bad("unknown directive");
    }
  }
  if (nfaces < 0) throw std::domain_error("gluing table: missing faces header");
  for (int k : counts)
    if (k == 0) throw std::domain_error("gluing table: face without a side count");
  m.resize(counts);
  for (auto& g : glues) {
    if (g[0] < 0 || g[0] >= nfaces || g[2] < 0 || g[2] >= nfaces ||
        g[1] < 0 || g[1] >= counts[g[0]] || g[3] < 0 || g[3] >= counts[g[2]])
      throw std::domain_error("gluing table: glue indices out of range");
    m.add_glue(g[0], g[1], g[2], g[3], g[4] != 0);
  }
  m.validate();
  return m;
}

inline void write_gluing_table(const PolyMap& m, std::ostream& out) {
  out << "faces " << m.face_count() << "\n";
  for (int f = 0; f < m.face_count(); ++f)
    out << "face " << f << " " << m.sides[f] << "\n";
  for (int f = 0; f < m.face_count(); ++f)
    for (int s = 0; s < m.sides[f]; ++s) {
      const auto& h = m.glue[f][s];
      if (h.f > f || (h.f == f && h.s > s))
        out << "glue " << f << " " << s << " " << h.f << " " << h.s << " "
            << (h.rev ? 'R' : 'N') << "\n";
    }
}

}  // namespace tessom
