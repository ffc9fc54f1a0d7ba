// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include "tessom/geometry.hpp"
#include "tessom/rng.hpp"

using namespace tessom;

namespace {

Point random_point(GeometryClass g, Rng& rng) {
  switch (g) {
    case GeometryClass::spherical:
      return normalized({rng.normal(), rng.normal(), rng.normal(), g});
    case GeometryClass::hyperbolic: {
      double x = 1.5 * rng.normal(), y = 1.5 * rng.normal();
      return normalized({x, y, std::sqrt(1.0 + x * x + y * y), g});
    }
    case GeometryClass::euclidean:
      return {4.0 * rng.normal(), 4.0 * rng.normal(), 0.0, g};
  }
  return {};
}

bool on_quadric(const Point& p, double tol) {
  switch (p.g) {
    case GeometryClass::spherical:
      return std::abs(p.x * p.x + p.y * p.y + p.z * p.z - 1.0) < tol;
    case GeometryClass::hyperbolic:
      return std::abs(p.x * p.x + p.y * p.y + 1.0 - p.z * p.z) < tol && p.z > 0;
    case GeometryClass::euclidean:
      return p.z == 0.0;
  }
  return false;
}

const GeometryClass kAll[] = {GeometryClass::spherical, GeometryClass::euclidean,
                              GeometryClass::hyperbolic};

}  // namespace

TEST_CASE("schlafli classification") {
  CHECK(classify_schlafli(5, 3) == GeometryClass::spherical);
  CHECK(classify_schlafli(4, 3) == GeometryClass::spherical);
  CHECK(classify_schlafli(3, 3) == GeometryClass::spherical);
  CHECK(classify_schlafli(6, 3) == GeometryClass::euclidean);
  CHECK(classify_schlafli(4, 4) == GeometryClass::euclidean);
  CHECK(classify_schlafli(7, 3) == GeometryClass::hyperbolic);
  CHECK(classify_schlafli(8, 3) == GeometryClass::hyperbolic);
}

TEST_CASE("distance closed forms") {
  Point n{0, 0, 1, GeometryClass::spherical};
  Point s{0, 0, -1, GeometryClass::spherical};
  CHECK(distance(n, s) == Catch::Approx(kPi).epsilon(1e-12));

  Point h0{0, 0, 1, GeometryClass::hyperbolic};
  Point h1{0, std::sinh(1.0), std::cosh(1.0), GeometryClass::hyperbolic};
  CHECK(distance(h0, h1) == Catch::Approx(1.0).epsilon(1e-12));

  Point e0{0, 0, 0, GeometryClass::euclidean};
  Point e1{3, 4, 0, GeometryClass::euclidean};
  CHECK(distance(e0, e1) == Catch::Approx(5.0).epsilon(1e-12));

  CHECK_THROWS_AS(distance(n, h0), std::domain_error);
}

TEST_CASE("metric axioms on random triples") {
  Rng rng(20260814);
  for (GeometryClass g : kAll) {
    for (int it = 0; it < 1000; ++it) {
      Point a = random_point(g, rng), b = random_point(g, rng), c = random_point(g, rng);
      double ab = distance(a, b), ba = distance(b, a);
      double ac = distance(a, c), cb = distance(c, b);
      REQUIRE(ab >= 0.0);
      REQUIRE(std::abs(ab - ba) < 1e-9);
      REQUIRE(ab <= ac + cb + 1e-9);
      REQUIRE(distance(a, a) < 1e-9);
    }
  }
}

TEST_CASE("isometries preserve the quadric and the metric") {
  Rng rng(99);
  for (GeometryClass g : kAll) {
    for (int it = 0; it < 200; ++it) {
      Isometry iso = compose(rotation_z(rng.uniform(-3, 3)),
                             compose(translate_x(g, rng.uniform(-2, 2)),
                                     (it % 2) ? mirror_y() : Isometry{}));
      Point a = random_point(g, rng), b = random_point(g, rng);
      Point ia = apply(iso, a), ib = apply(iso, b);
      REQUIRE(on_quadric(ia, 1e-9));
      REQUIRE(std::abs(distance(ia, ib) - distance(a, b)) < 1e-9);
    }
  }
}

TEST_CASE("isometry composition is application order") {
  Rng rng(7);
  for (GeometryClass g : kAll) {
    for (int it = 0; it < 100; ++it) {
      Isometry a = compose(rotation_z(rng.uniform(-3, 3)), translate_x(g, rng.uniform(-1, 1)));
      Isometry b = compose(translate_x(g, rng.uniform(-1, 1)), rotation_z(rng.uniform(-3, 3)));
      Point p = random_point(g, rng);
      Point lhs = apply(compose(a, b), p);
      Point rhs = apply(a, apply(b, p));
      REQUIRE(std::abs(lhs.x - rhs.x) < 1e-9);
      REQUIRE(std::abs(lhs.y - rhs.y) < 1e-9);
      REQUIRE(std::abs(lhs.z - rhs.z) < 1e-9);
    }
  }
}

TEST_CASE("recentering maps target to origin and preserves distances") {
  Rng rng(123);
  for (GeometryClass g : kAll) {
    Point o = origin(g);
    Isometry id = recentering_isometry(o);
    Point oo = apply(id, o);
    CHECK(distance(oo, o) < 1e-9);
    for (int it = 0; it < 200; ++it) {
      Point p = random_point(g, rng), q = random_point(g, rng);
      Isometry iso = recentering_isometry(p);
      REQUIRE(distance(apply(iso, p), o) < 1e-9);
      REQUIRE(std::abs(distance(apply(iso, p), apply(iso, q)) - distance(p, q)) < 1e-9);
    }
  }
}

TEST_CASE("projections") {
  Point h0 = origin(GeometryClass::hyperbolic);
  Projection pd{ProjectionKind::poincare_disk, h0};
  auto uv = project(h0, pd);
  CHECK(std::abs(uv[0]) < 1e-12);
  CHECK(std::abs(uv[1]) < 1e-12);

  Point sp{0.6, 0.8, 0.0, GeometryClass::spherical};
  auto xy = project_centered(ProjectionKind::orthographic, sp);
  CHECK(xy[0] == Catch::Approx(0.6));
  CHECK(xy[1] == Catch::Approx(0.8));

  Point np{0, 0, 1, GeometryClass::spherical};
  Projection st{ProjectionKind::stereographic, np};
  auto st0 = project(np, st);
  CHECK(std::abs(st0[0]) < 1e-12);
  CHECK(std::abs(st0[1]) < 1e-12);
  CHECK_THROWS_AS(project_centered(ProjectionKind::stereographic,
                                   Point{0, 0, -1, GeometryClass::spherical}),
                  std::domain_error);

  // Poincare image of any hyperboloid point lies inside the unit disk.
  Rng rng(5);
  for (int it = 0; it < 500; ++it) {
    Point p = random_point(GeometryClass::hyperbolic, rng);
    auto d = project_centered(ProjectionKind::poincare_disk, p);
    REQUIRE(d[0] * d[0] + d[1] * d[1] < 1.0);
  }
}
