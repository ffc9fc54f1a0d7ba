// SPDX-License-Identifier: Apache-2.0
// Geometric development of {p,q} polygon maps: canonical face measurements,
// the step isometry across a glued side, BFS development assigning a chart
// transform to every face (plus holonomy decks on quotients), and open-patch
// generation for Euclidean/hyperbolic tilings by position-keyed dedup.
#pragma once

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "tessom/geometry.hpp"
#include "tessom/poly_map.hpp"

namespace tessom {

struct SchlafliGeometry {
  int p = 0, q = 0;
  GeometryClass g = GeometryClass::euclidean;
  double b = 0;    // center to edge midpoint
  double rho = 0;  // center to vertex (circumradius)
};

// Face area by angle excess/deficit: a {p,q} face has p corners of angle
// 2*pi/q, so |sum of angles - (p-2)*pi| with the curvature sign.
inline double face_area(int p, int q) {
  double s = 2.0 * kPi * p / q - (p - 2) * kPi;
  return std::abs(s);
}

inline SchlafliGeometry make_schlafli_geometry(int p, int q) {
  if (p < 3 || q < 3) throw std::domain_error("schlafli parameters must be >= 3");
  SchlafliGeometry sg;
  sg.p = p;
  sg.q = q;
  sg.g = classify_schlafli(p, q);
  double r = std::cos(kPi / q) / std::sin(kPi / p);
  double c = 1.0 / (std::tan(kPi / p) * std::tan(kPi / q));
  switch (sg.g) {
    case GeometryClass::spherical:
      sg.b = std::acos(r);
      sg.rho = std::acos(c);
      break;
    case GeometryClass::hyperbolic:
      sg.b = std::acosh(r);
      sg.rho = std::acosh(c);
      break;
    case GeometryClass::euclidean:
      // unit spacing between adjacent tile centers
      sg.b = 0.5;
      sg.rho = 0.5 / std::cos(kPi / p);
      break;
  }
  return sg;
}

// Canonical face: center at the model origin, side-i midpoint at azimuth
// 2*pi*i/p, corner i at azimuth (2i-1)*pi/p.
inline double side_azimuth(const SchlafliGeometry& sg, int i) {
  return 2.0 * kPi * i / sg.p;
}

inline Point canonical_corner(const SchlafliGeometry& sg, int i) {
  Isometry t = compose(rotation_z((2.0 * i - 1.0) * kPi / sg.p), translate_x(sg.g, sg.rho));
  return apply(t, origin(sg.g));
}

// Chart transform of the face across side i of a face with chart M, where the
// neighbor's side j faces back. Orientation-compatible gluings share the edge
// with opposite traversal; reversing gluings compose a mirror.
inline Isometry neighbor_transform(const SchlafliGeometry& sg, const Isometry& M,
                                   int i, int j, bool rev) {
  Isometry step = compose(rotation_z(side_azimuth(sg, i)), translate_x(sg.g, 2.0 * sg.b));
  if (!rev) return compose(M, compose(step, rotation_z(kPi - side_azimuth(sg, j))));
  return compose(M, compose(step, compose(rotation_z(kPi + side_azimuth(sg, j)), mirror_y())));
}

// Inverse via adjugate; our matrices have determinant +-1.
inline Isometry inverse(const Isometry& a) {
  const auto& m = a.m;
  double det = m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
               m[2] * (m[3] * m[7] - m[4] * m[6]);
  Isometry r;
  r.m = {(m[4] * m[8] - m[5] * m[7]) / det, (m[2] * m[7] - m[1] * m[8]) / det,
         (m[1] * m[5] - m[2] * m[4]) / det, (m[5] * m[6] - m[3] * m[8]) / det,
         (m[0] * m[8] - m[2] * m[6]) / det, (m[2] * m[3] - m[0] * m[5]) / det,
         (m[3] * m[7] - m[4] * m[6]) / det, (m[1] * m[6] - m[0] * m[7]) / det,
         (m[0] * m[4] - m[1] * m[3]) / det};
  return r;
}

inline double matrix_distance(const Isometry& a, const Isometry& b) {
  double s = 0;
  for (int i = 0; i < 9; ++i) s = std::max(s, std::abs(a.m[i] - b.m[i]));
  return s;
}

struct Development {
  SchlafliGeometry sg;
  std::vector<Isometry> face_xform;
  // Non-trivial closures of non-tree gluings: deck * (copy of face g as
  // developed) = copy adjacent to f across side s. Identity decks (exactly
  // closing gluings, e.g. on the sphere) are omitted.
  struct Holonomy {
    int f = -1, s = -1;
    Isometry deck;
  };
  std::vector<Holonomy> holonomies;

  Point face_center(int f) const { return apply(face_xform[f], origin(sg.g)); }
};

// Breadth-first development from face `root` with chart M0. Works on closed
// maps and on patches with unpaired sides.
inline Development develop(const PolyMap& m, int p, int q, int root = 0,
                           const Isometry& M0 = Isometry{}) {
  for (int k : m.sides)
    if (k != p) throw std::domain_error("development requires a uniform {p,q} map");
  Development dev;
  dev.sg = make_schlafli_geometry(p, q);
  int n = m.face_count();
  dev.face_xform.assign(n, Isometry{});
  std::vector<char> seen(n, 0);
  std::vector<int> order;
  order.reserve(n);
  dev.face_xform[root] = M0;
  seen[root] = 1;
  order.push_back(root);
  for (size_t head = 0; head < order.size(); ++head) {
    int f = order[head];
    for (int s = 0; s < p; ++s) {
      const auto& h = m.glue[f][s];
      if (h.f < 0) continue;
      if (!seen[h.f]) {
        dev.face_xform[h.f] = neighbor_transform(dev.sg, dev.face_xform[f], s, h.s, h.rev);
        seen[h.f] = 1;
        order.push_back(h.f);
      }
    }
  }
  for (int f = 0; f < n; ++f)
    if (!seen[f]) throw std::domain_error("development: map is disconnected");
  // classify non-tree gluings: exact closure or holonomy deck
  for (int f = 0; f < n; ++f)
    for (int s = 0; s < p; ++s) {
      const auto& h = m.glue[f][s];
      if (h.f < 0) continue;
      Isometry implied = neighbor_transform(dev.sg, dev.face_xform[f], s, h.s, h.rev);
      Isometry deck = compose(implied, inverse(dev.face_xform[h.f]));
      if (matrix_distance(deck, Isometry{}) > 1e-6)
        dev.holonomies.push_back({f, s, deck});
    }
  return dev;
}

// ---------------------------------------------------------------------------
// Open patches of Euclidean/hyperbolic (or spherical) tilings, built ring by
// ring, deduplicating faces by quantized azimuthal-equidistant position.
// Face ids are in creation (ring) order; this order is the documented
// canonical traversal used by disk tie-breaking.

struct Patch {
  PolyMap map;
  Development dev;
  std::vector<int> ring;  // creation ring of each face
};

namespace detail {
struct PosKey {
  long long x, y;
  auto operator<=>(const PosKey&) const = default;
};

inline std::array<double, 2> azeq(const Point& p) {
  double d = distance(p, origin(p.g));
  double phi = std::atan2(p.y, p.x);
  return {d * std::cos(phi), d * std::sin(phi)};
}
}  // namespace detail

inline Patch build_patch(int p, int q, int rings) {
  if (rings < 0) throw std::domain_error("build_patch: rings must be >= 0");
  Patch patch;
  patch.dev.sg = make_schlafli_geometry(p, q);
  const SchlafliGeometry& sg = patch.dev.sg;
  PolyMap& m = patch.map;

  const double cell = 0.05;
  const double tol = 1e-6;
  std::map<detail::PosKey, std::vector<int>> grid;
  std::vector<Point> centers;

  auto key_of = [&](const std::array<double, 2>& c) {
    return detail::PosKey{(long long)std::floor(c[0] / cell), (long long)std::floor(c[1] / cell)};
  };
  auto find_face = [&](const Point& pt) -> int {
    // azimuthal-equidistant coordinates are unstable at the antipode
    if (sg.g == GeometryClass::spherical && distance(pt, origin(sg.g)) > kPi - 0.2) {
      for (size_t i = 0; i < centers.size(); ++i)
        if (distance(pt, centers[i]) < tol) return (int)i;
      return -1;
    }
    auto c = detail::azeq(pt);
    auto k = key_of(c);
    for (long long dx = -1; dx <= 1; ++dx)
      for (long long dy = -1; dy <= 1; ++dy) {
        auto it = grid.find(detail::PosKey{k.x + dx, k.y + dy});
        if (it == grid.end()) continue;
        for (int id : it->second)
          if (distance(pt, centers[id]) < tol) return id;
      }
    return -1;
  };
  auto add_face = [&](const Isometry& M, int r) -> int {
    int id = m.add_face(p);
    patch.dev.face_xform.push_back(M);
    patch.ring.push_back(r);
    Point c = apply(M, origin(sg.g));
    centers.push_back(c);
    grid[key_of(detail::azeq(c))].push_back(id);
    return id;
  };
  auto side_midpoint = [&](int f, int i) {
    Isometry t = compose(patch.dev.face_xform[f],
                         compose(rotation_z(side_azimuth(sg, i)), translate_x(sg.g, sg.b)));
    return apply(t, origin(sg.g));
  };

  add_face(Isometry{}, 0);
  for (int f = 0; f < m.face_count(); ++f) {
    for (int i = 0; i < p; ++i) {
      if (m.glue[f][i].f >= 0) continue;
      Isometry across = neighbor_transform(sg, patch.dev.face_xform[f], i, 0, false);
      Point nc = apply(across, origin(sg.g));
      int g = find_face(nc);
      if (g < 0) {
        if (patch.ring[f] >= rings) continue;  // open boundary side
        g = add_face(across, patch.ring[f] + 1);
        m.add_glue(f, i, g, 0, false);
        continue;
      }
      // locate which side of g faces f by matching the shared edge midpoint
      Point em = side_midpoint(f, i);
      int best = -1;
      double bd = tol;
      for (int j = 0; j < p; ++j) {
        double d = distance(em, side_midpoint(g, j));
        if (d < bd) {
          bd = d;
          best = j;
        }
      }
      if (best < 0) throw std::domain_error("build_patch: no facing side found");
      if (m.glue[g][best].f >= 0) throw std::domain_error("build_patch: side conflict");
      m.add_glue(f, i, g, best, false);
    }
  }
  return patch;
}

}  // namespace tessom
