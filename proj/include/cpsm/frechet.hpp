#pragma once

// Discrete and continuous Frechet distance between two polygonal curves:
// decision, value, and witness extraction, plus the free-space primitives
// (per-edge feasible intervals, single-row reachability propagation) that the
// matching module builds on.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "cpsm/geometry.hpp"

namespace cpsm {

// Monotone paired walk through the vertex grids of two curves, 1-based.
struct Coupling {
  std::vector<std::pair<int, int>> steps;
};

struct DiscreteFrechetResult {
  double value = 0;
  Coupling witness;
};

namespace detail {

inline double max_pair_dist_sq(const PolyCurve& P, const PolyCurve& Q,
                               const Coupling& c) {
  double m = 0;
  for (auto [a, b] : c.steps)
    m = std::max(m, dist_sq(P[static_cast<std::size_t>(a - 1)],
                            Q[static_cast<std::size_t>(b - 1)]));
  return m;
}

}  // namespace detail

inline DiscreteFrechetResult discrete_frechet(const PolyCurve& P, const PolyCurve& Q) {
  require_same_dim(P.dim(), Q.dim(), "discrete_frechet");
  const std::size_t n = P.num_vertices(), m = Q.num_vertices();
  constexpr double INF = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> D(n, std::vector<double>(m, INF));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      double d = dist_sq(P[i], Q[j]);
      double best;
      if (i == 0 && j == 0)
        best = 0;
      else {
        best = INF;
        if (i > 0) best = std::min(best, D[i - 1][j]);
        if (j > 0) best = std::min(best, D[i][j - 1]);
        if (i > 0 && j > 0) best = std::min(best, D[i - 1][j - 1]);
      }
      D[i][j] = std::max(d, best);
    }
  // Backtrack a witness: at each step move to the predecessor with minimal value.
  Coupling w;
  std::size_t i = n - 1, j = m - 1;
  w.steps.emplace_back(static_cast<int>(i + 1), static_cast<int>(j + 1));
  while (i > 0 || j > 0) {
    double best = INF;
    int move = -1;  // 0: diag, 1: left (i-1), 2: down (j-1)
    if (i > 0 && j > 0 && D[i - 1][j - 1] < best) { best = D[i - 1][j - 1]; move = 0; }
    if (i > 0 && D[i - 1][j] < best) { best = D[i - 1][j]; move = 1; }
    if (j > 0 && D[i][j - 1] < best) { best = D[i][j - 1]; move = 2; }
    if (move == 0) { --i; --j; }
    else if (move == 1) --i;
    else --j;
    w.steps.emplace_back(static_cast<int>(i + 1), static_cast<int>(j + 1));
  }
  std::reverse(w.steps.begin(), w.steps.end());
  return {std::sqrt(D[n - 1][m - 1]), std::move(w)};
}

// ---------------------------------------------------------------------------
// Free-space primitives
// ---------------------------------------------------------------------------

// A closed sub-interval of an edge parameter range; empty when lo > hi.
struct PosInterval {
  double lo = 1, hi = 0;

  bool empty() const { return lo > hi; }
  bool contains(double x) const { return lo <= x && x <= hi; }
  static PosInterval none() { return {1, 0}; }
};

// Positions t in [0,1] on segment (a,b) whose point lies within eps of c.
// The set is the intersection of a line with a disk, hence one interval.
inline PosInterval segment_disk_interval(const Point& c, const Point& a,
                                         const Point& b, double eps) {
  const std::size_t d = c.dim();
  double A = 0, B = 0, C = -eps * eps;
  for (std::size_t i = 0; i < d; ++i) {
    double u = b[i] - a[i], w = a[i] - c[i];
    A += u * u;
    B += 2 * u * w;
    C += w * w;
  }
  if (A == 0.0) return C <= 0 ? PosInterval{0, 1} : PosInterval::none();
  double disc = B * B - 4 * A * C;
  if (disc < 0) {
    // Near-tangent: treat a vanishing discriminant as a single-point interval.
    if (disc >= -1e-12) disc = 0;
    else return PosInterval::none();
  }
  double r = std::sqrt(disc);
  double lo = (-B - r) / (2 * A), hi = (-B + r) / (2 * A);
  lo = std::max(lo, 0.0);
  hi = std::min(hi, 1.0);
  if (lo > hi) return PosInterval::none();
  return {lo, hi};
}

// Free positions of point s against the whole curve, in global curve
// coordinates [0, length]; adjacent per-segment intervals touching at a vertex
// are merged. A single-vertex curve yields {0} when within range.
inline std::vector<PosInterval> free_positions(const PolyCurve& P, const Point& s,
                                               double eps) {
  std::vector<PosInterval> out;
  if (P.length() == 0) {
    if (dist(P[0], s) <= eps) out.push_back({0, 0});
    return out;
  }
  for (std::size_t i = 0; i < P.length(); ++i) {
    PosInterval iv = segment_disk_interval(s, P[i], P[i + 1], eps);
    if (iv.empty()) continue;
    PosInterval g{iv.lo + static_cast<double>(i), iv.hi + static_cast<double>(i)};
    if (!out.empty() && g.lo <= out.back().hi) out.back().hi = std::max(out.back().hi, g.hi);
    else out.push_back(g);
  }
  return out;
}

// Reachability across one free-space row: curve P horizontal, segment u->v
// vertical. `entries` are reachable positions with the pending curve standing
// at u (already up-closed within the free components of u); the result is the
// set of positions reachable with the pending curve arrived at v.
inline std::vector<PosInterval> propagate_row(const PolyCurve& P, const Point& u,
                                              const Point& v, double eps,
                                              const std::vector<PosInterval>& entries) {
  std::vector<PosInterval> out;
  if (entries.empty()) return out;
  if (P.length() == 0) {
    // Single-vertex curve: traverse u->v entirely while standing at P[0].
    if (std::max(dist(P[0], u), dist(P[0], v)) <= eps) out.push_back({0, 0});
    return out;
  }
  const std::size_t n = P.length();
  PosInterval left = PosInterval::none();  // reach on the shared vertical edge
  std::size_t e = 0;                       // cursor into entries
  for (std::size_t i = 0; i < n; ++i) {
    const double cl = static_cast<double>(i), cr = cl + 1;
    // Reachable part of this cell's bottom edge.
    PosInterval bottom = PosInterval::none();
    while (e < entries.size() && entries[e].hi < cl) ++e;
    for (std::size_t k = e; k < entries.size() && entries[k].lo <= cr; ++k) {
      double lo = std::max(entries[k].lo, cl), hi = std::min(entries[k].hi, cr);
      if (lo <= hi) { bottom = {lo, hi}; break; }  // only the min entry matters
    }
    PosInterval topfree = segment_disk_interval(v, P[i], P[i + 1], eps);
    PosInterval top = PosInterval::none();
    if (!topfree.empty()) {
      if (!left.empty())
        top = {topfree.lo + cl, topfree.hi + cl};
      else if (!bottom.empty()) {
        double lo = std::max(topfree.lo + cl, bottom.lo);
        double hi = topfree.hi + cl;
        if (lo <= hi) top = {lo, hi};
      }
    }
    if (!top.empty()) {
      if (!out.empty() && top.lo <= out.back().hi) out.back().hi = std::max(out.back().hi, top.hi);
      else out.push_back(top);
    }
    // Right edge of the cell, feeding the next cell's left edge.
    PosInterval rfree = segment_disk_interval(P[i + 1], u, v, eps);
    PosInterval right = PosInterval::none();
    if (!rfree.empty()) {
      if (!bottom.empty())
        right = rfree;
      else if (!left.empty()) {
        // left reach is in y-units on the previous edge
        double lo = std::max(rfree.lo, left.lo);
        if (lo <= rfree.hi) right = {lo, rfree.hi};
      }
    }
    left = right;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Continuous Frechet decision and value
// ---------------------------------------------------------------------------

struct ContinuousDecision {
  bool ok = false;
  // Monotone cell path through the free-space diagram, bottom-left to
  // top-right, as (P-segment, Q-segment) pairs. Empty for degenerate curves.
  std::vector<std::pair<int, int>> cell_path;
};

inline ContinuousDecision continuous_frechet_decide(const PolyCurve& P,
                                                    const PolyCurve& Q, double eps) {
  require_same_dim(P.dim(), Q.dim(), "continuous_frechet_decide");
  if (eps < 0) throw std::invalid_argument("negative eps");
  const std::size_t n = P.length(), m = Q.length();
  if (n == 0 || m == 0) {
    // Against a single point, the max over the other curve is attained at a
    // vertex, so the decision reduces to vertex distances.
    const PolyCurve& pt = (n == 0) ? P : Q;
    const PolyCurve& other = (n == 0) ? Q : P;
    for (const Point& w : other.vertices)
      if (dist(pt[0], w) > eps) return {false, {}};
    return {true, {}};
  }
  if (dist(P[0], Q[0]) > eps || dist(P[n], Q[m]) > eps) return {false, {}};

  auto lfree = [&](std::size_t i, std::size_t j) {
    return segment_disk_interval(P[i], Q[j], Q[j + 1], eps);
  };
  auto bfree = [&](std::size_t i, std::size_t j) {
    return segment_disk_interval(Q[j], P[i], P[i + 1], eps);
  };

  // LR[i][j]: reach on vertical edge at P-vertex i within Q-segment j.
  // BR[i][j]: reach on horizontal edge at Q-vertex j within P-segment i.
  std::vector<std::vector<PosInterval>> LR(n + 1,
      std::vector<PosInterval>(m, PosInterval::none()));
  std::vector<std::vector<PosInterval>> BR(n,
      std::vector<PosInterval>(m + 1, PosInterval::none()));

  // Boundary: walk along the bottom and left borders from the origin.
  for (std::size_t i = 0; i < n; ++i) {
    PosInterval f = bfree(i, 0);
    if (f.empty() || f.lo > 0) break;
    BR[i][0] = f;
    if (f.hi < 1) break;
  }
  for (std::size_t j = 0; j < m; ++j) {
    PosInterval f = lfree(0, j);
    if (f.empty() || f.lo > 0) break;
    LR[0][j] = f;
    if (f.hi < 1) break;
  }

  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      const PosInterval& L = LR[i][j];
      const PosInterval& B = BR[i][j];
      if (L.empty() && B.empty()) continue;
      PosInterval rf = lfree(i + 1, j);
      if (!rf.empty()) {
        PosInterval r = PosInterval::none();
        if (!B.empty()) r = rf;
        else if (std::max(rf.lo, L.lo) <= rf.hi) r = {std::max(rf.lo, L.lo), rf.hi};
        if (!r.empty() && (LR[i + 1][j].empty() || r.lo < LR[i + 1][j].lo))
          LR[i + 1][j] = r;
      }
      PosInterval tf = bfree(i, j + 1);
      if (!tf.empty()) {
        PosInterval t = PosInterval::none();
        if (!L.empty()) t = tf;
        else if (std::max(tf.lo, B.lo) <= tf.hi) t = {std::max(tf.lo, B.lo), tf.hi};
        if (!t.empty() && (BR[i][j + 1].empty() || t.lo < BR[i][j + 1].lo))
          BR[i][j + 1] = t;
      }
    }

  bool ok = LR[n][m - 1].contains(1.0) || BR[n - 1][m].contains(1.0);
  ContinuousDecision res{ok, {}};
  if (ok) {
    // Derive a monotone cell path by walking predecessors back to the origin.
    std::size_t i = n - 1, j = m - 1;
    res.cell_path.emplace_back(static_cast<int>(i), static_cast<int>(j));
    while (i > 0 || j > 0) {
      if (j > 0 && !BR[i][j].empty()) --j;
      else if (i > 0 && !LR[i][j].empty()) --i;
      else if (j > 0) --j;
      else --i;
      res.cell_path.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
    std::reverse(res.cell_path.begin(), res.cell_path.end());
  }
  return res;
}

inline double continuous_frechet_value(const PolyCurve& P, const PolyCurve& Q,
                                       double tol) {
  if (tol <= 0) throw std::invalid_argument("non-positive tol");
  double lo = 0, hi = bbox_diameter(P, Q);
  if (continuous_frechet_decide(P, Q, lo).ok) return lo;
  while (!continuous_frechet_decide(P, Q, hi).ok) hi = std::max(hi * 2, 1e-30);
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    if (continuous_frechet_decide(P, Q, mid).ok) hi = mid;
    else lo = mid;
  }
  return hi;
}

}  // namespace cpsm
