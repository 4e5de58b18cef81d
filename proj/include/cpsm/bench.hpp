#pragma once

// Benchmark harness: random instances, per-solver timing and a fitted log-log
// slope so the empirical scaling can be compared against the analysis.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cpsm/geometry.hpp"
#include "cpsm/matching.hpp"
#include "cpsm/sweep.hpp"

namespace cpsm {

struct BenchConfig {
  std::vector<int> sizes{4, 8, 16, 32};  // n = k = size
  int instances_per_size = 3;
  std::uint64_t seed = 1;
  bool run_sweep = true;
  bool run_discrete = true;
  // Sizes for the (much cheaper) discrete decision; scaled up for measurable times.
  std::vector<int> discrete_sizes{32, 64, 128, 256};
};

struct BenchRow {
  std::string solver;
  int n = 0, k = 0;
  double median_sec = 0;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  std::map<std::string, double> slopes;  // log time vs log(n*k)

  std::string tsv() const {
    std::ostringstream out;
    out << "solver\tn\tk\tmedian_sec\n";
    for (const BenchRow& r : rows)
      out << r.solver << '\t' << r.n << '\t' << r.k << '\t' << r.median_sec << '\n';
    for (const auto& [s, v] : slopes) out << "# slope\t" << s << '\t' << v << '\n';
    return out.str();
  }
};

namespace benchdet {

// Random-walk curve in the unit square plus uniform points. The first curve
// vertex is pushed far away so the translation decision must reject after a
// full sweep rather than stopping at an early covering point.
inline std::pair<PolyCurve, PointSet> random_instance(int n, int k, std::mt19937_64& rng,
                                                      bool force_reject) {
  std::uniform_real_distribution<double> U(0, 1);
  std::normal_distribution<double> G(0, 0.12);
  std::vector<Point> vs;
  double x = U(rng), y = U(rng);
  for (int i = 0; i <= n; ++i) {
    vs.push_back(Point(x, y));
    x += G(rng);
    y += G(rng);
  }
  if (force_reject) vs[0] = Point(vs[0][0] + 50.0, vs[0][1]);
  std::vector<Point> ps;
  for (int j = 0; j < k; ++j) ps.push_back(Point(U(rng), U(rng)));
  return {PolyCurve(std::move(vs)), PointSet(std::move(ps))};
}

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

template <class F>
inline double time_once(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

// Least-squares slope of log(t) against log(size).
inline double loglog_slope(const std::vector<std::pair<double, double>>& pts) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [x, y] : pts) {
    double lx = std::log(x), ly = std::log(y);
    sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
  }
  double n = static_cast<double>(pts.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace benchdet

inline BenchReport run_benchmark(const BenchConfig& cfg) {
  BenchReport rep;
  std::mt19937_64 rng(cfg.seed);

  if (cfg.run_sweep) {
    std::vector<std::pair<double, double>> fit;
    for (int sz : cfg.sizes) {
      std::vector<double> times;
      for (int inst = 0; inst < cfg.instances_per_size; ++inst) {
        auto [P, S] = benchdet::random_instance(sz, sz, rng, true);
        auto disks = build_disks(P, S, 0.25, Variant::Subset);
        int nc = num_sweep_colors(P, S, Variant::Subset);
        // Repeat tiny runs so clock granularity does not dominate.
        int reps = sz <= 8 ? 5 : 1;
        double t = benchdet::time_once([&] {
          for (int r = 0; r < reps; ++r) sweep_decide(disks, nc);
        });
        times.push_back(t / reps);
      }
      double med = benchdet::median(times);
      rep.rows.push_back({"sweep_decide", sz, sz, med});
      fit.push_back({static_cast<double>(sz) * sz, med});
    }
    // Slope against n*k halves the exponent; report against size (n = k).
    std::vector<std::pair<double, double>> fit_size;
    for (auto [nk, t] : fit) fit_size.push_back({std::sqrt(nk), t});
    rep.slopes["sweep_decide"] = benchdet::loglog_slope(fit_size);
  }

  if (cfg.run_discrete) {
    std::vector<std::pair<double, double>> fit;
    for (int sz : cfg.discrete_sizes) {
      std::vector<double> times;
      for (int inst = 0; inst < cfg.instances_per_size; ++inst) {
        auto [P, S] = benchdet::random_instance(sz, sz, rng, false);
        int reps = 200000 / (sz * sz) + 1;
        double t = benchdet::time_once([&] {
          for (int r = 0; r < reps; ++r) discrete_subset_decide(P, S, 0.05);
        });
        times.push_back(t / reps);
      }
      double med = benchdet::median(times);
      rep.rows.push_back({"discrete_subset_decide", sz, sz, med});
      fit.push_back({static_cast<double>(sz) * sz, med});
    }
    rep.slopes["discrete_subset_decide"] = benchdet::loglog_slope(fit);
  }
  return rep;
}

}  // namespace cpsm
