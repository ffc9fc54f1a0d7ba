// SPDX-License-Identifier: Apache-2.0
// Constant-curvature model surfaces: unit sphere, Euclidean plane, Minkowski
// hyperboloid. Points live on their quadric; isometries are 3x3 matrices
// (orthogonal / rigid-motion / Lorentz). Projections map to render planes.
#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

namespace tessom {

inline constexpr double kPi = 3.14159265358979323846;

enum class GeometryClass { spherical, euclidean, hyperbolic };

// A regular {p,q} tessellation exists on the sphere iff (p-2)(q-2) < 4,
// in the plane iff equal, on the hyperbolic plane iff greater.
inline GeometryClass classify_schlafli(int p, int q) {
  int s = (p - 2) * (q - 2);
  if (s < 4) return GeometryClass::spherical;
  if (s == 4) return GeometryClass::euclidean;
  return GeometryClass::hyperbolic;
}

struct Point {
  double x = 0.0, y = 0.0, z = 0.0;
  GeometryClass g = GeometryClass::euclidean;
};

inline Point origin(GeometryClass g) {
  if (g == GeometryClass::euclidean) return {0.0, 0.0, 0.0, g};
  return {0.0, 0.0, 1.0, g};
}

// Pull a drifted point back onto its quadric (sphere: |p|=1; hyperboloid:
// x^2+y^2+1=z^2, z>0; plane: z=0).
inline Point normalized(Point p) {
  switch (p.g) {
    case GeometryClass::spherical: {
      double n = std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z);
      return {p.x / n, p.y / n, p.z / n, p.g};
    }
    case GeometryClass::hyperbolic: {
      double q = p.z * p.z - p.x * p.x - p.y * p.y;
      double n = std::sqrt(q > 0 ? q : 1e-300);
      double s = p.z < 0 ? -1.0 : 1.0;
      return {s * p.x / n, s * p.y / n, s * p.z / n, p.g};
    }
    case GeometryClass::euclidean:
      return {p.x, p.y, 0.0, p.g};
  }
  return p;
}

inline double distance(const Point& a, const Point& b) {
  if (a.g != b.g) throw std::domain_error("distance: mixed geometries");
  double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
  switch (a.g) {
    case GeometryClass::spherical: {
      double c = 0.5 * std::sqrt(dx * dx + dy * dy + dz * dz);
      return 2.0 * std::asin(c > 1.0 ? 1.0 : c);
    }
    case GeometryClass::hyperbolic: {
      double q = dx * dx + dy * dy - dz * dz;
      return 2.0 * std::asinh(0.5 * std::sqrt(q > 0 ? q : 0.0));
    }
    case GeometryClass::euclidean:
      return std::sqrt(dx * dx + dy * dy);
  }
  return 0.0;
}

// Row-major 3x3 matrix. For the plane it acts on homogeneous (x, y, 1).
struct Isometry {
  std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};
};

inline Isometry compose(const Isometry& a, const Isometry& b) {
  Isometry r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += a.m[3 * i + k] * b.m[3 * k + j];
      r.m[3 * i + j] = s;
    }
  return r;
}

inline Point apply(const Isometry& iso, const Point& p) {
  double w = (p.g == GeometryClass::euclidean) ? 1.0 : p.z;
  double x = iso.m[0] * p.x + iso.m[1] * p.y + iso.m[2] * w;
  double y = iso.m[3] * p.x + iso.m[4] * p.y + iso.m[5] * w;
  double z = iso.m[6] * p.x + iso.m[7] * p.y + iso.m[8] * w;
  return normalized({x, y, z, p.g});
}

// Rotation about the model origin (same matrix in all three geometries).
inline Isometry rotation_z(double t) {
  double c = std::cos(t), s = std::sin(t);
  return {{c, -s, 0, s, c, 0, 0, 0, 1}};
}

// Reflection across the x-axis / xz-plane; preserves all three quadrics.
inline Isometry mirror_y() { return {{1, 0, 0, 0, -1, 0, 0, 0, 1}}; }

// Translation moving the origin distance d along the +x axis: a rotation
// about y (sphere), an x-boost (hyperboloid), or a shift (plane).
inline Isometry translate_x(GeometryClass g, double d) {
  switch (g) {
    case GeometryClass::spherical: {
      double c = std::cos(d), s = std::sin(d);
      return {{c, 0, s, 0, 1, 0, -s, 0, c}};
    }
    case GeometryClass::hyperbolic: {
      double c = std::cosh(d), s = std::sinh(d);
      return {{c, 0, s, 0, 1, 0, s, 0, c}};
    }
    case GeometryClass::euclidean:
      return {{1, 0, d, 0, 1, 0, 0, 0, 1}};
  }
  return {};
}

// Isometry taking `target` to the model origin.
inline Isometry recentering_isometry(const Point& target) {
  double phi = std::atan2(target.y, target.x);
  double d = distance(target, origin(target.g));
  return compose(translate_x(target.g, -d), rotation_z(-phi));
}

enum class ProjectionKind { poincare_disk, orthographic, stereographic, planar_identity };

struct Projection {
  ProjectionKind kind = ProjectionKind::planar_identity;
  Point center;  // recentered to the origin before projecting
};

// Project an already-recentered point.
inline std::array<double, 2> project_centered(ProjectionKind kind, const Point& p) {
  switch (kind) {
    case ProjectionKind::poincare_disk:
      if (p.g != GeometryClass::hyperbolic)
        throw std::domain_error("poincare projection needs hyperbolic points");
      return {p.x / (1.0 + p.z), p.y / (1.0 + p.z)};
    case ProjectionKind::orthographic:
      if (p.g != GeometryClass::spherical)
        throw std::domain_error("orthographic projection needs spherical points");
      return {p.x, p.y};
    case ProjectionKind::stereographic: {
      if (p.g != GeometryClass::spherical)
        throw std::domain_error("stereographic projection needs spherical points");
      if (1.0 + p.z < 1e-12)
        throw std::domain_error("stereographic projection singular at (0,0,-1)");
      return {2.0 * p.x / (1.0 + p.z), 2.0 * p.y / (1.0 + p.z)};
    }
    case ProjectionKind::planar_identity:
      if (p.g != GeometryClass::euclidean)
        throw std::domain_error("planar projection needs euclidean points");
      return {p.x, p.y};
  }
  return {0.0, 0.0};
}

inline std::array<double, 2> project(const Point& p, const Projection& proj) {
  return project_centered(proj.kind, apply(recentering_isometry(proj.center), p));
}

}  // namespace tessom
