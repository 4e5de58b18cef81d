#pragma once

// Shared helpers for the test suites: reproducible random instances and a few
// small assertions used across files.

#include <random>
#include <vector>

#include "cpsm/geometry.hpp"

namespace testutil {

inline cpsm::PolyCurve random_curve(std::mt19937_64& rng, int max_segments,
                                    double scale = 1.0, int dim = 2) {
  std::uniform_int_distribution<int> L(0, max_segments);
  std::uniform_real_distribution<double> U(-scale, scale);
  int n = L(rng);
  std::vector<cpsm::Point> vs;
  for (int i = 0; i <= n; ++i) {
    std::vector<double> c(static_cast<std::size_t>(dim));
    for (double& v : c) v = U(rng);
    vs.push_back(cpsm::Point(std::move(c)));
  }
  return cpsm::PolyCurve(std::move(vs));
}

inline cpsm::PointSet random_points(std::mt19937_64& rng, int max_k,
                                    double scale = 1.0, int dim = 2) {
  std::uniform_int_distribution<int> K(1, max_k);
  std::uniform_real_distribution<double> U(-scale, scale);
  int k = K(rng);
  std::vector<cpsm::Point> ps;
  for (int j = 0; j < k; ++j) {
    std::vector<double> c(static_cast<std::size_t>(dim));
    for (double& v : c) v = U(rng);
    ps.push_back(cpsm::Point(std::move(c)));
  }
  cpsm::dedupe_points(ps);
  return cpsm::PointSet(std::move(ps));
}

// Coordinates snapped to a coarse grid provoke ties, tangencies and
// cocircularities far more often than generic doubles.
inline cpsm::PolyCurve random_curve_grid(std::mt19937_64& rng, int max_segments,
                                         double step = 0.25) {
  std::uniform_int_distribution<int> L(0, max_segments);
  std::uniform_int_distribution<int> G(-4, 4);
  int n = L(rng);
  std::vector<cpsm::Point> vs;
  for (int i = 0; i <= n; ++i) vs.push_back(cpsm::Point(G(rng) * step, G(rng) * step));
  return cpsm::PolyCurve(std::move(vs));
}

inline cpsm::PointSet random_points_grid(std::mt19937_64& rng, int max_k,
                                         double step = 0.25) {
  std::uniform_int_distribution<int> K(1, max_k);
  std::uniform_int_distribution<int> G(-4, 4);
  int k = K(rng);
  std::vector<cpsm::Point> ps;
  for (int j = 0; j < k; ++j) ps.push_back(cpsm::Point(G(rng) * step, G(rng) * step));
  cpsm::dedupe_points(ps);
  return cpsm::PointSet(std::move(ps));
}

}  // namespace testutil
