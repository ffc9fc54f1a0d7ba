// SPDX-License-Identifier: Apache-2.0
// Exact arithmetic in the Eisenstein-like lattice Z + Zw where w = e^{i pi/3}
// (so w^2 = w - 1). Its units are the six sixth roots of unity, which are the
// hexagonal lattice directions in counterclockwise order.
#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>

namespace tessom {

struct Eis {
  long long x = 0, y = 0;  // x + y*w
  friend bool operator==(const Eis&, const Eis&) = default;
};

inline Eis eis_add(Eis a, Eis b) { return {a.x + b.x, a.y + b.y}; }
inline Eis eis_sub(Eis a, Eis b) { return {a.x - b.x, a.y - b.y}; }
inline Eis eis_neg(Eis a) { return {-a.x, -a.y}; }

// (x1 + y1 w)(x2 + y2 w) with w^2 = w - 1.
inline Eis eis_mul(Eis a, Eis b) {
  return {a.x * b.x - a.y * b.y, a.x * b.y + a.y * b.x + a.y * b.y};
}

// Complex conjugation: conj(w) = 1 - w.
inline Eis eis_conj(Eis a) { return {a.x + a.y, -a.y}; }

// Squared modulus (a positive-definite integer quadratic form).
inline long long eis_norm(Eis a) { return a.x * a.x + a.x * a.y + a.y * a.y; }

// Exact division; throws if b does not divide a in the lattice.
inline Eis eis_div(Eis a, Eis b) {
  long long n = eis_norm(b);
  if (n == 0) throw std::domain_error("eisenstein division by zero");
  Eis t = eis_mul(a, eis_conj(b));
  if (t.x % n || t.y % n) throw std::domain_error("inexact eisenstein division");
  return {t.x / n, t.y / n};
}

inline bool eis_divides(Eis b, Eis a) {
  long long n = eis_norm(b);
  if (n == 0) return a.x == 0 && a.y == 0;
  Eis t = eis_mul(a, eis_conj(b));
  return t.x % n == 0 && t.y % n == 0;
}

// The six units w^k, counterclockwise starting at 1.
inline constexpr std::array<Eis, 6> kEisUnits{
    Eis{1, 0}, Eis{0, 1}, Eis{-1, 1}, Eis{-1, 0}, Eis{0, -1}, Eis{1, -1}};

// Positive when b lies counterclockwise of a (z-component of the real cross
// product, up to the constant sqrt(3)/2 > 0).
inline long long eis_cross(Eis a, Eis b) { return a.x * b.y - a.y * b.x; }

// Real-plane coordinates (w = (1/2, sqrt(3)/2)).
inline std::array<double, 2> eis_to_xy(Eis a) {
  return {a.x + 0.5 * a.y, 0.8660254037844386467637231707529362 * a.y};
}

}  // namespace tessom
