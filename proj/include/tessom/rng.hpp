// SPDX-License-Identifier: Apache-2.0
// Deterministic random numbers. The engine is std::mt19937_64 (bit-exact by
// the standard); the distributions are hand-rolled because the standard
// library's are implementation-defined and we promise byte-identical reruns.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace tessom {

// SplitMix64 finalizer; good avalanche, stable everywhere.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t hash_u64(std::uint64_t h, std::uint64_t v) {
  return mix64(h ^ (v * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL));
}

inline std::uint64_t hash_str(std::uint64_t h, std::string_view s) {
  for (unsigned char c : s) h = (h ^ c) * 0x100000001b3ULL;
  return mix64(h);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t u64() { return eng_(); }

  // Unbiased integer in [0, n); Lemire's multiply-shift with rejection.
  std::uint64_t below(std::uint64_t n) {
    if (n <= 1) return 0;
    __uint128_t m = static_cast<__uint128_t>(eng_()) * n;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < n) {
      std::uint64_t t = (0 - n) % n;  // 2^64 mod n
      while (lo < t) {
        m = static_cast<__uint128_t>(eng_()) * n;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  // Standard normal via Box-Muller; one spare value cached.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform01(), u2 = uniform01();
    while (u1 == 0.0) u1 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace tessom
