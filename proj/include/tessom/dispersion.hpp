// SPDX-License-Identifier: Apache-2.0
// Neighborhood influence for training: the simulated random-walk dispersion
// table (forward DP with an exact first-crossing stopping rule and
// t-subsampled snapshot storage), a translation fast path for tori, the
// Gaussian baseline factor, the iteration schedule f(t), and a little-endian
// binary cache for precomputed tables.
#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <deque>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "tessom/tile_graph.hpp"

namespace tessom {

inline constexpr double default_dispersion_p = 1e-4;
inline constexpr double default_stop_ratio = 1.6;

struct SimulateOptions {
  long long max_steps = 10'000'000;  // hard cap guarding non-convergence
  double snapshot_ratio = 1.03;      // geometric spacing of the stored tail
  long long dense_head = 0;          // unit-step snapshots up to here; 0 = auto
  long long scan_every = 1024;       // stopping-rule evaluation cadence
};

// P[i][j][t] for t = 0..horizon, stored as snapshots: every step through a
// dense head, then geometrically spaced times, always including the horizon.
// Queries between stored times interpolate linearly; rowmax is tracked at
// every step, so it is exact regardless of the snapshot spacing.
struct DispersionTable {
  int n = 0;
  double p = 0;
  double stop_ratio = 0;
  long long horizon = 0;                   // T: first step meeting the stop rule
  std::vector<long long> times;            // sorted snapshot times, 0 .. horizon
  std::vector<std::vector<double>> snaps;  // one n*n row-major matrix per time
  std::vector<double> rowmax;              // n*n: max over t in [0, horizon]

  // index of the last stored time <= t plus the interpolation weight toward
  // the next stored time (weight 0 when t is stored exactly)
  std::pair<size_t, double> locate(long long t) const {
    if (t < 0 || t > horizon) throw std::out_of_range("dispersion: time outside horizon");
    auto it = std::lower_bound(times.begin(), times.end(), t);
    size_t hi = static_cast<size_t>(it - times.begin());
    if (times[hi] == t) return {hi, 0.0};
    return {hi - 1, static_cast<double>(t - times[hi - 1]) /
                        static_cast<double>(times[hi] - times[hi - 1])};
  }

  double at(int i, int j, long long t) const {
    auto [lo, w] = locate(t);
    size_t e = static_cast<size_t>(i) * n + j;
    double v = snaps[lo][e];
    if (w > 0) v += w * (snaps[lo + 1][e] - v);
    return v;
  }

  // the training factor P[i][j][t] / max_t P[i][j][t], in [0, 1]
  double factor(int i, int j, long long t) const {
    double m = rowmax[static_cast<size_t>(i) * n + j];
    return m > 0 ? at(i, j, t) / m : 0.0;
  }

  // one full row of factors, sharing a single snapshot lookup
  void row_factors(int i, long long t, std::vector<double>& out) const {
    auto [lo, w] = locate(t);
    out.resize(n);
    const double* a = snaps[lo].data() + static_cast<size_t>(i) * n;
    const double* b = w > 0 ? snaps[lo + 1].data() + static_cast<size_t>(i) * n : a;
    const double* m = rowmax.data() + static_cast<size_t>(i) * n;
    for (int j = 0; j < n; ++j) {
      double v = a[j] + w * (b[j] - a[j]);
      out[j] = m[j] > 0 ? v / m[j] : 0.0;
    }
  }
};

namespace detail {

// flattened adjacency; open boundary sides simply contribute no neighbor
struct Csr {
  std::vector<int> off, nbr;
  explicit Csr(const TileGraph& g) {
    off.push_back(0);
    for (int t = 0; t < g.tile_count(); ++t) {
      for (int u : g.adj[t])
        if (u >= 0) nbr.push_back(u);
      off.push_back(static_cast<int>(nbr.size()));
    }
  }
};

// advance `rows` source rows one step, literal per-neighbor accumulation:
// P'[j] = P[j] + sum over neighbors k of p * (P[k] - P[j])
inline void disperse_step(const Csr& a, double p, int n, int rows, const double* cur,
                          double* nxt) {
  for (int i = 0; i < rows; ++i) {
    const double* r = cur + static_cast<size_t>(i) * n;
    double* w = nxt + static_cast<size_t>(i) * n;
    for (int j = 0; j < n; ++j) {
      double acc = r[j];
      for (int e = a.off[j]; e < a.off[j + 1]; ++e) acc += p * (r[a.nbr[e]] - r[j]);
      w[j] = acc;
    }
  }
}

// worst per-source max/min ratio; infinite while any tile is still at zero
inline double worst_row_ratio(int n, int rows, const double* cur) {
  double worst = 0;
  for (int i = 0; i < rows; ++i) {
    const double* r = cur + static_cast<size_t>(i) * n;
    double mx = 0, mn = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
      mx = std::max(mx, r[j]);
      mn = std::min(mn, r[j]);
    }
    if (!(mn > 0)) return std::numeric_limits<double>::infinity();
    worst = std::max(worst, mx / mn);
  }
  return worst;
}

// snapshot times are a pure function of t: every step through `dense`, then
// geometric with the configured ratio, so reruns and the torus fast path
// store bit-identical schedules
struct SnapSchedule {
  long long dense = 64;
  double ratio = 1.03;
  long long next_after(long long t) const {
    if (t < dense) return t + 1;
    long long g = dense;
    while (g <= t) g = std::max(g + 1, static_cast<long long>(std::llround(g * ratio)));
    return g;
  }
};

struct RawRun {
  long long horizon = 0;
  std::vector<long long> times;
  std::vector<std::vector<double>> snaps;  // rows*n per snapshot
  std::vector<double> rowmax;              // rows*n
};

// forward DP from identity rows with rowmax tracked every step. The stop
// rule is evaluated every scan_every steps from a checkpoint; once a scan
// sees the worst row ratio at or below stop_ratio the segment is rerun one
// step at a time, so the returned horizon is the exact first such step.
inline RawRun run_dispersion(const TileGraph& g, double p, double stop_ratio,
                             const SimulateOptions& opt, int rows) {
  const int n = g.tile_count();
  if (n < 1) throw std::domain_error("dispersion: empty graph");
  int maxdeg = 0;
  for (int t = 0; t < n; ++t) maxdeg = std::max(maxdeg, g.degree(t));
  if (!(p > 0) || p * maxdeg >= 1)
    throw std::domain_error("dispersion: unstable step probability");
  if (!(stop_ratio > 1)) throw std::domain_error("dispersion: stop ratio must exceed 1");
  if (!(opt.snapshot_ratio > 1))
    throw std::domain_error("dispersion: snapshot ratio must exceed 1");
  if (opt.max_steps < 0 || opt.scan_every < 1)
    throw std::domain_error("dispersion: bad step limits");

  Csr adj(g);
  SnapSchedule sched;
  sched.ratio = opt.snapshot_ratio;
  sched.dense = opt.dense_head > 0
                    ? opt.dense_head
                    : std::clamp<long long>(8'388'608 / (static_cast<long long>(n) * n),
                                            64, 4096);

  RawRun run;
  std::vector<double> cur(static_cast<size_t>(rows) * n, 0.0);
  for (int i = 0; i < rows; ++i) cur[static_cast<size_t>(i) * n + i] = 1.0;
  std::vector<double> nxt(cur.size());
  run.rowmax = cur;

  auto push_snap = [&](long long time) {
    run.times.push_back(time);
    run.snaps.push_back(cur);
  };
  push_snap(0);

  long long t = 0;
  long long next_snap = sched.next_after(0);
  auto advance = [&]() {
    disperse_step(adj, p, n, rows, cur.data(), nxt.data());
    cur.swap(nxt);
    ++t;
    for (size_t e = 0; e < cur.size(); ++e) run.rowmax[e] = std::max(run.rowmax[e], cur[e]);
    if (t == next_snap) {
      push_snap(t);
      next_snap = sched.next_after(t);
    }
  };

  bool converged = worst_row_ratio(n, rows, cur.data()) <= stop_ratio;
  std::vector<double> chk_cur, chk_rowmax;
  while (!converged) {
    if (t >= opt.max_steps)
      throw std::runtime_error("dispersion: no convergence within the step cap");
    chk_cur = cur;
    chk_rowmax = run.rowmax;
    long long chk_t = t;
    size_t chk_snaps = run.times.size();
    long long segment_end = std::min(t + opt.scan_every, opt.max_steps);
    while (t < segment_end) advance();
    if (worst_row_ratio(n, rows, cur.data()) <= stop_ratio) {
      // crossed inside this segment: rewind and locate the first such step
      cur = chk_cur;
      run.rowmax = chk_rowmax;
      t = chk_t;
      run.times.resize(chk_snaps);
      run.snaps.resize(chk_snaps);
      next_snap = sched.next_after(t);
      do advance();
      while (worst_row_ratio(n, rows, cur.data()) > stop_ratio);
      converged = true;
    }
  }
  run.horizon = t;
  if (run.times.back() != t) push_snap(t);
  return run;
}

// label-preserving automorphism sending tile 0 to tile r: the image of a
// neighbor across side k is the neighbor of the image across the same side
// k with the same back side. Empty when no such map exists.
inline std::vector<int> translate_map(const TileGraph& g, int r) {
  int n = g.tile_count();
  std::vector<int> f(n, -1);
  if (g.sides[0] != g.sides[r]) return {};
  f[0] = r;
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int t = queue.front();
    queue.pop_front();
    int t2 = f[t];
    if (g.sides[t] != g.sides[t2]) return {};
    for (int k = 0; k < g.sides[t]; ++k) {
      int u = g.adj[t][k], u2 = g.adj[t2][k];
      if ((u < 0) != (u2 < 0)) return {};
      if (u < 0) continue;
      if (g.back[t][k] != g.back[t2][k]) return {};
      if (f[u] < 0) {
        f[u] = u2;
        queue.push_back(u);
      } else if (f[u] != u2) {
        return {};
      }
    }
  }
  std::vector<char> seen(n, 0);
  for (int t = 0; t < n; ++t) {
    if (f[t] < 0 || seen[f[t]]) return {};
    seen[f[t]] = 1;
  }
  return f;
}

}  // namespace detail

// full forward DP over all source rows
inline DispersionTable simulate(const TileGraph& g, double p = default_dispersion_p,
                                double stop_ratio = default_stop_ratio,
                                const SimulateOptions& opt = {}) {
  detail::RawRun run = detail::run_dispersion(g, p, stop_ratio, opt, g.tile_count());
  DispersionTable tab;
  tab.n = g.tile_count();
  tab.p = p;
  tab.stop_ratio = stop_ratio;
  tab.horizon = run.horizon;
  tab.times = std::move(run.times);
  tab.snaps = std::move(run.snaps);
  tab.rowmax = std::move(run.rowmax);
  return tab;
}

// fast path for translation-invariant graphs (tori): simulate source row 0
// only and translate it to every other source. Row updates share the same
// kernel and neighbor order as simulate(), so the two paths agree exactly.
inline DispersionTable simulate_symmetric(const TileGraph& g,
                                          double p = default_dispersion_p,
                                          double stop_ratio = default_stop_ratio,
                                          const SimulateOptions& opt = {}) {
  const int n = g.tile_count();
  std::vector<std::vector<int>> maps;
  maps.reserve(n);
  for (int r = 0; r < n; ++r) {
    maps.push_back(detail::translate_map(g, r));
    if (maps.back().empty())
      throw std::domain_error("dispersion: graph is not translation-invariant");
  }
  detail::RawRun run = detail::run_dispersion(g, p, stop_ratio, opt, 1);
  DispersionTable tab;
  tab.n = n;
  tab.p = p;
  tab.stop_ratio = stop_ratio;
  tab.horizon = run.horizon;
  tab.times = std::move(run.times);
  tab.snaps.reserve(run.snaps.size());
  for (const auto& row : run.snaps) {
    std::vector<double> full(static_cast<size_t>(n) * n);
    for (int r = 0; r < n; ++r) {
      const std::vector<int>& f = maps[r];
      double* out = full.data() + static_cast<size_t>(r) * n;
      for (int j = 0; j < n; ++j) out[f[j]] = row[j];
    }
    tab.snaps.push_back(std::move(full));
  }
  tab.rowmax.assign(static_cast<size_t>(n) * n, 0.0);
  for (int r = 0; r < n; ++r) {
    const std::vector<int>& f = maps[r];
    double* out = tab.rowmax.data() + static_cast<size_t>(r) * n;
    for (int j = 0; j < n; ++j) out[f[j]] = run.rowmax[j];
  }
  return tab;
}

// --- Gaussian baseline and iteration schedule ---------------------------------

enum class DistanceMode { discrete_hops, geometric };

struct GaussianParams {
  double eta = 0.1;
  double sigma0 = 0;  // initial radius; callers default it to the lattice diameter
  DistanceMode distance_mode = DistanceMode::discrete_hops;
};

// eta * exp(-r^2 / (2 sigma(t)^2)) with sigma(t) = sigma0 (1 - t/t_max);
// the vanishing radius at t = t_max degenerates to a point mass at r = 0
inline double gaussian_factor(double r, long long t, long long t_max,
                              const GaussianParams& gp) {
  if (!(gp.sigma0 > 0)) throw std::domain_error("gaussian: sigma0 must be positive");
  if (!(gp.eta > 0) || gp.eta > 1) throw std::domain_error("gaussian: eta outside (0, 1]");
  if (t < 0 || t_max < 1 || t > t_max) throw std::domain_error("gaussian: bad iteration");
  double sigma = gp.sigma0 * (1.0 - static_cast<double>(t) / static_cast<double>(t_max));
  if (!(sigma > 0)) return r == 0 ? gp.eta : 0.0;
  return gp.eta * std::exp(-(r * r) / (2.0 * sigma * sigma));
}

// dispersion index read at iteration t: round(T (1 - t/t_max)^2), in [0, T]
inline long long schedule_f(long long t, long long t_max, long long horizon) {
  if (t < 0 || t_max < 1 || t > t_max) throw std::domain_error("schedule: bad iteration");
  double u = 1.0 - static_cast<double>(t) / static_cast<double>(t_max);
  long long f = std::llround(static_cast<double>(horizon) * u * u);
  return std::clamp<long long>(f, 0, horizon);
}

// --- binary cache --------------------------------------------------------------

// layout: "TDSP" magic, u32 version, i64 n, f64 p, f64 stop_ratio, i64 horizon,
// i64 snapshot count, then times, snapshots and rowmax as little-endian 64-bit
// values. Only little-endian hosts are supported.
namespace detail {

inline void require_little_endian() {
  if constexpr (std::endian::native != std::endian::little)
    throw std::runtime_error("dispersion cache: little-endian hosts only");
}

constexpr std::uint32_t dispersion_magic = 0x50534454;  // "TDSP"

template <class T>
void write_raw(std::ostream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

template <class T>
T read_raw(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(v));
  if (!in) throw std::runtime_error("dispersion cache: truncated file");
  return v;
}

}  // namespace detail

inline void save_dispersion(const DispersionTable& tab, const std::string& path) {
  detail::require_little_endian();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("dispersion cache: cannot write " + path);
  detail::write_raw(out, detail::dispersion_magic);
  detail::write_raw(out, std::uint32_t{1});
  detail::write_raw(out, static_cast<std::int64_t>(tab.n));
  detail::write_raw(out, tab.p);
  detail::write_raw(out, tab.stop_ratio);
  detail::write_raw(out, static_cast<std::int64_t>(tab.horizon));
  detail::write_raw(out, static_cast<std::int64_t>(tab.times.size()));
  out.write(reinterpret_cast<const char*>(tab.times.data()),
            static_cast<std::streamsize>(tab.times.size() * sizeof(long long)));
  for (const auto& snap : tab.snaps)
    out.write(reinterpret_cast<const char*>(snap.data()),
              static_cast<std::streamsize>(snap.size() * sizeof(double)));
  out.write(reinterpret_cast<const char*>(tab.rowmax.data()),
            static_cast<std::streamsize>(tab.rowmax.size() * sizeof(double)));
  if (!out) throw std::runtime_error("dispersion cache: write failed for " + path);
}

inline DispersionTable load_dispersion(const std::string& path) {
  detail::require_little_endian();
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("dispersion cache: cannot open " + path);
  if (detail::read_raw<std::uint32_t>(in) != detail::dispersion_magic)
    throw std::runtime_error("dispersion cache: bad magic in " + path);
  if (detail::read_raw<std::uint32_t>(in) != 1)
    throw std::runtime_error("dispersion cache: unsupported version in " + path);
  DispersionTable tab;
  auto n64 = detail::read_raw<std::int64_t>(in);
  tab.p = detail::read_raw<double>(in);
  tab.stop_ratio = detail::read_raw<double>(in);
  tab.horizon = detail::read_raw<std::int64_t>(in);
  auto count = detail::read_raw<std::int64_t>(in);
  if (n64 < 1 || n64 > 1'000'000 || count < 1 || count > 100'000'000)
    throw std::runtime_error("dispersion cache: implausible dimensions in " + path);
  tab.n = static_cast<int>(n64);
  tab.times.resize(static_cast<size_t>(count));
  in.read(reinterpret_cast<char*>(tab.times.data()),
          static_cast<std::streamsize>(tab.times.size() * sizeof(long long)));
  size_t cells = static_cast<size_t>(tab.n) * tab.n;
  tab.snaps.assign(static_cast<size_t>(count), std::vector<double>(cells));
  for (auto& snap : tab.snaps)
    in.read(reinterpret_cast<char*>(snap.data()),
            static_cast<std::streamsize>(cells * sizeof(double)));
  tab.rowmax.resize(cells);
  in.read(reinterpret_cast<char*>(tab.rowmax.data()),
          static_cast<std::streamsize>(cells * sizeof(double)));
  if (!in) throw std::runtime_error("dispersion cache: truncated file " + path);
  if (tab.times.front() != 0 || tab.times.back() != tab.horizon ||
      !std::is_sorted(tab.times.begin(), tab.times.end()))
    throw std::runtime_error("dispersion cache: inconsistent snapshot times in " + path);
  return tab;
}

// stable cache key: one file per (manifold id, p, stop ratio)
inline std::string dispersion_cache_name(const std::string& manifold_id, double p,
                                         double stop_ratio) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "_p%.9g_r%.9g.disp", p, stop_ratio);
  return manifold_id + buf;
}

}  // namespace tessom
