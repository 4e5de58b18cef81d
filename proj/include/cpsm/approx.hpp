#pragma once

// Translation-space approximation in R^d. A feasible match must place the
// curve's start within eps of some input point, so aligning P_0 with each
// point gives a 2-approximation; a lattice of translations around the best
// aligned candidates refines it to a (1+alpha) factor (or (3+alpha) when the
// per-translation solver is itself the NS-compliant 3-approximation).

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cpsm/geometry.hpp"
#include "cpsm/matching.hpp"

namespace cpsm {

struct LatticeSpec {
  Translation center;
  double half_width = 0;
  double spacing = 0;
};

struct ApproxResult {
  Translation t;
  MatchResult match;
  double eps_hat = 0;
};

enum class ApproxVariant { DiscSubset, DiscAllPoints, ContSubset };

inline std::vector<Translation> start_align_candidates(const PolyCurve& P,
                                                       const PointSet& S) {
  require_same_dim(P.dim(), S.dim(), "start_align_candidates");
  std::vector<Translation> out;
  for (std::size_t j = 0; j < S.size(); ++j) {
    std::vector<double> v(P.dim());
    for (std::size_t i = 0; i < P.dim(); ++i) v[i] = S[j][i] - P[0][i];
    Translation t(std::move(v));
    if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
  }
  return out;
}

namespace approxdet {

// Enumerate the axis-aligned lattice; calls f(t) for every lattice point.
template <class F>
inline void for_each_lattice_point(const LatticeSpec& spec, F&& f) {
  const std::size_t d = spec.center.dim();
  long per_axis = static_cast<long>(std::ceil(2 * spec.half_width / spec.spacing)) + 1;
  std::vector<long> idx(d, 0);
  while (true) {
    std::vector<double> v(d);
    for (std::size_t i = 0; i < d; ++i)
      v[i] = spec.center[i] - spec.half_width +
             static_cast<double>(idx[i]) * spec.spacing;
    f(Translation(std::move(v)));
    std::size_t axis = 0;
    while (axis < d && ++idx[axis] >= per_axis) {
      idx[axis] = 0;
      ++axis;
    }
    if (axis == d) break;
  }
}

}  // namespace approxdet

// Generic lattice scheme over a per-translation solver returning
// (value, MatchResult). The guarantee factor is (1+alpha) times whatever
// factor the solver itself carries.
template <class Solver>
inline ApproxResult translate_lattice_scheme(const PolyCurve& P, const PointSet& S,
                                             double alpha, Solver&& solve,
                                             double solver_slack = 0) {
  if (alpha <= 0) throw std::invalid_argument("non-positive alpha");
  require_same_dim(P.dim(), S.dim(), "translate_lattice_scheme");
  const double sqrt_d = std::sqrt(static_cast<double>(P.dim()));

  auto cands = start_align_candidates(P, S);
  struct Cand {
    Translation t;
    double delta;
    MatchResult match;
  };
  std::vector<Cand> evaluated;
  double best = std::numeric_limits<double>::infinity();
  for (const Translation& t : cands) {
    auto [delta, m] = solve(apply_translation(P, t));
    m.translation = t;
    if (delta < best) best = delta;
    evaluated.push_back({t, delta, std::move(m)});
    if (delta == 0) {
      // Lattice degenerates; the candidate is already optimal.
      return {t, evaluated.back().match, 0.0};
    }
  }

  ApproxResult out;
  out.eps_hat = std::numeric_limits<double>::infinity();
  for (const Cand& c : evaluated) {
    if (c.delta < out.eps_hat) {
      out.eps_hat = c.delta;
      out.t = c.t;
      out.match = c.match;
    }
    // The candidate aligned with the optimum has delta <= 2*eps_opt <= 2*best
    // (up to the per-translation solver's own slack).
    if (c.delta > 2 * best + solver_slack) continue;
    LatticeSpec spec{c.t, c.delta, alpha * c.delta / sqrt_d};
    approxdet::for_each_lattice_point(spec, [&](const Translation& t) {
      auto [v, m] = solve(apply_translation(P, t));
      if (v < out.eps_hat) {
        out.eps_hat = v;
        out.t = t;
        m.translation = t;
        out.match = std::move(m);
      }
    });
  }
  return out;
}

inline ApproxResult translate_approx(const PolyCurve& P, const PointSet& S, double alpha,
                                     ApproxVariant variant, double tol = 1e-9) {
  switch (variant) {
    case ApproxVariant::DiscSubset:
      return translate_lattice_scheme(P, S, alpha, [&](const PolyCurve& M) {
        return discrete_cpsm_optimize(M, S, Variant::Subset);
      });
    case ApproxVariant::DiscAllPoints:
      return translate_lattice_scheme(P, S, alpha, [&](const PolyCurve& M) {
        return discrete_cpsm_optimize(M, S, Variant::AllPoints);
      });
    case ApproxVariant::ContSubset:
      if (tol <= 0) throw std::invalid_argument("non-positive tol");
      return translate_lattice_scheme(
          P, S, alpha, [&](const PolyCurve& M) { return continuous_subset_optimize(M, S, tol); },
          tol);
  }
  throw std::logic_error("unreachable");
}

inline ApproxResult translate_approx_allpoints_cont(const PolyCurve& P, const PointSet& S,
                                                    double alpha, double tol) {
  if (tol <= 0) throw std::invalid_argument("non-positive tol");
  return translate_lattice_scheme(
      P, S, alpha, [&](const PolyCurve& M) { return allpoints_3approx(M, S, tol); }, tol);
}

}  // namespace cpsm
