#pragma once

// Brute-force reference implementations. Deliberately naive: exhaustive
// coupling enumeration, exhaustive curve enumeration over the point set, and
// grid scans over translation space. These certify the real solvers at small
// scale and are allowed to be exponential.

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cpsm/exact.hpp"
#include "cpsm/frechet.hpp"
#include "cpsm/geometry.hpp"
#include "cpsm/matching.hpp"
#include "cpsm/sweep.hpp"  // disk types only; the decision logic here is independent

namespace cpsm {

struct OracleBudget {
  int max_curve_len = 0;  // vertices; 0 means default n_P + k + 1
  double grid_step = 0.05;
  double bbox_margin = 0.1;
};

// Discrete Frechet by memoized recursion over paired walks.
inline double brute_coupling_frechet(const PolyCurve& P, const PolyCurve& Q) {
  require_same_dim(P.dim(), Q.dim(), "brute_coupling_frechet");
  const std::size_t n = P.num_vertices(), m = Q.num_vertices();
  if (n > 9 || m > 9) throw std::invalid_argument("brute_coupling_frechet size over budget");
  std::vector<double> memo(n * m, -1.0);
  auto rec = [&](auto&& self, std::size_t i, std::size_t j) -> double {
    double& slot = memo[i * m + j];
    if (slot >= 0) return slot;
    double here = dist(P[i], Q[j]);
    double best;
    if (i == 0 && j == 0) best = here;
    else {
      best = std::numeric_limits<double>::infinity();
      if (i > 0) best = std::min(best, self(self, i - 1, j));
      if (j > 0) best = std::min(best, self(self, i, j - 1));
      if (i > 0 && j > 0) best = std::min(best, self(self, i - 1, j - 1));
      best = std::max(best, here);
    }
    return slot = best;
  };
  return rec(rec, n - 1, m - 1);
}

enum class OracleVariant { DiscSubset, DiscAll, ContSubset, ContAll, ContAllNS };

namespace oracledet {

// NS-compliance test for a fixed candidate curve Q: every point of S must be
// visitable at its closest P-segment in some eps-matching. Enumerates, for
// each point, which Q-vertex realizes the visit, then runs a constrained
// free-space reachability for each choice.
inline bool ns_feasible(const PolyCurve& P, const PointSet& S, const PolyCurve& Q,
                        double eps) {
  if (P.length() == 0) return true;  // no segments: every visit is at P[0]
  ClosestSegmentIndex csi = closest_segments(P, S);
  const std::size_t k = S.size(), m = Q.num_vertices();
  std::vector<std::vector<std::size_t>> occ(k);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < m; ++i)
      if (Q[i] == S[j]) occ[j].push_back(i);
  for (std::size_t j = 0; j < k; ++j)
    if (occ[j].empty()) return false;

  std::vector<std::size_t> choice(k, 0);
  while (true) {
    // Windows per Q-vertex: the visit must pass through [c, c+1] of P.
    std::vector<double> req_lo(m, -std::numeric_limits<double>::infinity());
    std::vector<double> req_cap(m, std::numeric_limits<double>::infinity());
    for (std::size_t j = 0; j < k; ++j) {
      std::size_t i = occ[j][choice[j]];
      double c = static_cast<double>(csi.seg[j]);
      req_lo[i] = std::max(req_lo[i], c);
      req_cap[i] = std::min(req_cap[i], c + 1);
    }
    auto constrain = [&](std::vector<PosInterval> reach,
                         std::size_t i) -> std::vector<PosInterval> {
      if (req_lo[i] == -std::numeric_limits<double>::infinity()) return reach;
      std::vector<PosInterval> out;
      for (const PosInterval& r : reach) {
        // r = [min arrival, up-closure top] within one free component.
        if (r.lo > req_cap[i]) continue;
        double lo = std::max(r.lo, req_lo[i]);
        if (lo > r.hi) continue;
        if (lo > req_cap[i]) continue;  // window misses the component
        out.push_back({lo, r.hi});
      }
      return out;
    };

    std::vector<PosInterval> reach;
    for (const PosInterval& f : free_positions(P, Q[0], eps))
      if (f.lo <= 0.0 && 0.0 <= f.hi) reach.push_back({0.0, f.hi});
    reach = constrain(std::move(reach), 0);
    for (std::size_t i = 1; i < m && !reach.empty(); ++i) {
      reach = propagate_row(P, Q[i - 1], Q[i], eps, reach);
      reach = constrain(std::move(reach), i);
    }
    const double end = static_cast<double>(P.length());
    for (const PosInterval& r : reach)
      if (r.hi >= end) return true;

    std::size_t axis = 0;
    while (axis < k && ++choice[axis] >= occ[axis].size()) {
      choice[axis] = 0;
      ++axis;
    }
    if (axis == k) break;
  }
  return false;
}

}  // namespace oracledet

inline std::optional<PolyCurve> brute_curve_exists(const PolyCurve& P, const PointSet& S,
                                                   double eps, OracleVariant variant,
                                                   const OracleBudget& budget = {}) {
  require_same_dim(P.dim(), S.dim(), "brute_curve_exists");
  if (eps < 0) throw std::invalid_argument("negative eps");
  const std::size_t k = S.size();
  const int L = budget.max_curve_len > 0
                    ? budget.max_curve_len
                    : static_cast<int>(P.length()) + static_cast<int>(k) + 1;
  if (L < 1) throw std::invalid_argument("max_curve_len too small");
  double total = 0;
  for (int len = 1; len <= L; ++len) total += std::pow(static_cast<double>(k), len);
  if (total > 1e7) throw std::invalid_argument("brute_curve_exists budget exceeded");

  const bool all_points = variant != OracleVariant::DiscSubset &&
                          variant != OracleVariant::ContSubset;
  const bool discrete = variant == OracleVariant::DiscSubset ||
                        variant == OracleVariant::DiscAll;

  for (int len = 1; len <= L; ++len) {
    std::vector<std::size_t> idx(static_cast<std::size_t>(len), 0);
    while (true) {
      bool ok = true;
      if (all_points) {
        std::vector<char> seen(k, 0);
        for (std::size_t i : idx) seen[i] = 1;
        for (char c : seen)
          if (!c) { ok = false; break; }
      }
      if (ok) {
        std::vector<Point> vs;
        vs.reserve(idx.size());
        for (std::size_t i : idx) vs.push_back(S[i]);
        PolyCurve Q(std::move(vs));
        bool accept;
        if (discrete)
          accept = brute_coupling_frechet(P, Q) <= eps;
        else if (variant == OracleVariant::ContAllNS)
          accept = continuous_frechet_decide(P, Q, eps).ok &&
                   oracledet::ns_feasible(P, S, Q, eps);
        else
          accept = continuous_frechet_decide(P, Q, eps).ok;
        if (accept) return Q;
      }
      // Lexicographic odometer, most-significant digit first.
      std::size_t pos = idx.size();
      while (pos > 0 && ++idx[pos - 1] >= k) idx[--pos] = 0;
      if (pos == 0) break;
    }
  }
  return std::nullopt;
}

struct GridScanResult {
  std::optional<Translation> t;
  // Fixed-curve optimum minus eps at the best grid point (negative: accepted).
  double best_margin = std::numeric_limits<double>::infinity();
  Translation best_t;
};

inline GridScanResult grid_translation_scan(const PolyCurve& P, const PointSet& S,
                                            double eps, Variant variant,
                                            const OracleBudget& budget = {}) {
  if (P.dim() != 2 || S.dim() != 2) throw std::invalid_argument("grid scan requires D=2");
  if (budget.grid_step <= 0) throw std::invalid_argument("non-positive grid_step");
  double lox = std::numeric_limits<double>::infinity(), loy = lox;
  double hix = -lox, hiy = -lox;
  for (std::size_t i = 0; i < P.num_vertices(); ++i)
    for (std::size_t j = 0; j < S.size(); ++j) {
      double tx = S[j][0] - P[i][0], ty = S[j][1] - P[i][1];
      lox = std::min(lox, tx); hix = std::max(hix, tx);
      loy = std::min(loy, ty); hiy = std::max(hiy, ty);
    }
  double inflate = eps + budget.bbox_margin;
  lox -= inflate; loy -= inflate; hix += inflate; hiy += inflate;
  double nx = std::floor((hix - lox) / budget.grid_step) + 1;
  double ny = std::floor((hiy - loy) / budget.grid_step) + 1;
  if (nx * ny > 1e7) throw std::invalid_argument("grid_translation_scan budget exceeded");

  GridScanResult out;
  for (double ty = loy; ty <= hiy; ty += budget.grid_step)
    for (double tx = lox; tx <= hix; tx += budget.grid_step) {
      Translation t(tx, ty);
      auto [val, m] = discrete_cpsm_optimize(apply_translation(P, t), S, variant);
      if (val - eps < out.best_margin) {
        out.best_margin = val - eps;
        out.best_t = t;
      }
      if (val <= eps && !out.t) out.t = t;
    }
  return out;
}

// Naive exact oracle for the sweep's decision: with equal radii, a nonempty
// common-coverage region contains a disk center or a pairwise boundary
// intersection, so testing only those candidate points is complete.
inline bool candidate_cover_decide_exact(const std::vector<ExactDisk>& disks,
                                         int num_colors) {
  if (num_colors == 0) return true;
  if (disks.empty()) return false;
  auto covered = [&](const QuadExt& px, const QuadExt& py) {
    std::vector<char> have(static_cast<std::size_t>(num_colors), 0);
    for (const ExactDisk& d : disks) {
      QuadExt ex = sub_rational(px, d.center.x), ey = sub_rational(py, d.center.y);
      QuadExt dd = add_same_field(mul_same_field(ex, ex), mul_same_field(ey, ey));
      if (sign(sub_rational(dd, d.radius_sq)) <= 0)
        for (int c : d.colors) have[static_cast<std::size_t>(c)] = 1;
    }
    for (char h : have)
      if (!h) return false;
    return true;
  };
  for (const ExactDisk& d : disks)
    if (covered(QuadExt(d.center.x), QuadExt(d.center.y))) return true;
  for (std::size_t a = 0; a < disks.size(); ++a)
    for (std::size_t b = a + 1; b < disks.size(); ++b) {
      Rational dx = disks[b].center.x - disks[a].center.x;
      Rational dy = disks[b].center.y - disks[a].center.y;
      Rational d2 = dx * dx + dy * dy;
      if (sgn(d2) == 0) continue;
      Rational r2 = disks[a].radius_sq;
      if (sgn(d2 - 4 * r2) > 0) continue;
      Rational mx = (disks[a].center.x + disks[b].center.x) / 2;
      Rational my = (disks[a].center.y + disks[b].center.y) / 2;
      if (sgn(d2 - 4 * r2) == 0) {
        if (covered(QuadExt(mx), QuadExt(my))) return true;
        continue;
      }
      Rational s = r2 / d2 - Rational(1, 4);
      if (covered(QuadExt(mx, -dy, s), QuadExt(my, dx, s))) return true;
      if (covered(QuadExt(mx, dy, s), QuadExt(my, -dx, s))) return true;
    }
  return false;
}

inline bool candidate_cover_decide(const std::vector<ColoredDisk>& disks, int num_colors) {
  std::vector<ExactDisk> ex;
  for (const ColoredDisk& d : disks) {
    Rational r = rational_from_double(d.radius);
    ex.push_back({rational_point(d.center), r * r, d.colors});
  }
  return candidate_cover_decide_exact(ex, num_colors);
}

}  // namespace cpsm
