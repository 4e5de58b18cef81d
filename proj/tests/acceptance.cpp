// Acceptance run: one line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "cpsm/approx.hpp"
#include "cpsm/bench.hpp"
#include "cpsm/frechet.hpp"
#include "cpsm/matching.hpp"
#include "cpsm/oracle.hpp"
#include "cpsm/sweep.hpp"
#include "degeneracy.hpp"
#include "util.hpp"

using namespace cpsm;

namespace {

int failures = 0;

void report(int crit, bool ok, const char* what, const std::string& detail = "") {
  std::printf("criterion %2d: %s  %s%s%s\n", crit, ok ? "PASS" : "FAIL", what,
              detail.empty() ? "" : "  -- ", detail.c_str());
  if (!ok) ++failures;
}

double now_minus(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

// 1 + 2: discrete exactness against brute force, and the continuous value
// never exceeding the discrete one, on the same 500 pairs.
static void criteria_1_2() {
  std::mt19937_64 rng(101);
  auto t0 = std::chrono::steady_clock::now();
  int bad1 = 0, bad2 = 0;
  for (int it = 0; it < 500; ++it) {
    PolyCurve P = testutil::random_curve(rng, 5);
    PolyCurve Q = testutil::random_curve(rng, 5);
    double d = discrete_frechet(P, Q).value;
    if (d != brute_coupling_frechet(P, Q)) ++bad1;
    if (continuous_frechet_value(P, Q, 1e-6) > d + 1e-6) ++bad2;
  }
  double secs = now_minus(t0);
  report(1, bad1 == 0 && secs < 10.0, "discrete Frechet equals brute force on 500 pairs",
         std::to_string(bad1) + " mismatches, " + std::to_string(secs) + " s");
  report(2, bad2 == 0, "continuous value <= discrete value on the same pairs",
         std::to_string(bad2) + " violations");
}

static void criterion_3() {
  std::mt19937_64 rng(103);
  std::uniform_real_distribution<double> E(0.05, 1.2);
  int bad = 0;
  for (int it = 0; it < 200; ++it) {
    PolyCurve P = testutil::random_curve(rng, 4);
    PointSet S = testutil::random_points(rng, 4);
    for (int q = 0; q < 3; ++q) {
      double eps = E(rng);
      OracleBudget disc;
      disc.max_curve_len = static_cast<int>(P.num_vertices() + S.size());
      OracleBudget cont;
      cont.max_curve_len = 5;
      if (discrete_subset_decide(P, S, eps).has_value() !=
          brute_curve_exists(P, S, eps, OracleVariant::DiscSubset, disc).has_value())
        ++bad;
      if (discrete_allpoints_decide(P, S, eps).has_value() !=
          brute_curve_exists(P, S, eps, OracleVariant::DiscAll, disc).has_value())
        ++bad;
      if (continuous_subset_decide(P, S, eps).has_value() !=
          brute_curve_exists(P, S, eps, OracleVariant::ContSubset, cont).has_value())
        ++bad;
      if (ns_compliant_decide(P, S, eps).has_value() !=
          brute_curve_exists(P, S, eps, OracleVariant::ContAllNS, cont).has_value())
        ++bad;
    }
  }
  report(3, bad == 0, "fixed-curve decisions agree with curve enumeration (200 x 3 x 4)",
         std::to_string(bad) + " disagreements");
}

static void criteria_4_5() {
  std::mt19937_64 rng(104);
  std::uniform_real_distribution<double> E(0.1, 0.8);
  SweepOptions exact;
  exact.mode = SweepMode::Exact;
  int bad4 = 0, bad5 = 0;
  bool worked_ok = false;

  for (int it = 0; it < 300; ++it) {
    PolyCurve P = it % 3 == 2 ? testutil::random_curve_grid(rng, 4)
                              : testutil::random_curve(rng, 4);
    PointSet S = it % 3 == 2 ? testutil::random_points_grid(rng, 4)
                             : testutil::random_points(rng, 4);
    double eps = it % 5 == 0 ? 0.25 : E(rng);

    for (Variant v : {Variant::Subset, Variant::AllPoints}) {
      auto disks = build_disks(P, S, eps, v);
      int nc = num_sweep_colors(P, S, v);
      auto t = sweep_decide(disks, nc, exact);
      if (t.has_value() != candidate_cover_decide(disks, nc)) ++bad4;
      if (t) {
        auto [val, m] = discrete_cpsm_optimize(apply_translation(P, *t), S, v);
        if (val > eps + 1e-9) ++bad4;
      }
    }

    // Optimization: alternate the variant to keep the runtime in budget.
    Variant v = it % 2 ? Variant::Subset : Variant::AllPoints;
    auto opt = sweep_optimize(P, S, v);
    std::vector<RationalPoint> centers;
    for (const auto& d : build_disks(P, S, 1.0, v))
      centers.push_back(rational_point(d.center));
    bool member = false;
    for (const auto& [r2, cr] : sweepdet::critical_radii_sq(centers))
      if (std::abs(std::sqrt(static_cast<double>(r2)) - opt.eps_star) <= 1e-12)
        member = true;
    if (!member) ++bad5;
    double lo = 0, hi = bbox_diameter(P, S) + 1.0;
    for (int i = 0; i < 60 && hi - lo > 1e-9; ++i) {
      double mid = (lo + hi) / 2;
      if (tcpsm_sweep_decide(P, S, mid, v)) hi = mid;
      else lo = mid;
    }
    if (std::abs(opt.eps_star - hi) > 1e-8) ++bad5;
  }

  {
    PolyCurve P{Point(0, 0), Point(2, 0)};
    PointSet S{Point(0, 0), Point(1, 0)};
    auto opt = sweep_optimize(P, S, Variant::Subset);
    worked_ok = std::abs(opt.eps_star - 0.5) <= 1e-12 &&
                std::abs(opt.t[0] + 0.5) <= 1e-9 && std::abs(opt.t[1]) <= 1e-9;
  }

  report(4, bad4 == 0, "exact sweep agrees with the candidate-point oracle (300 x 2)",
         std::to_string(bad4) + " disagreements");
  report(5, bad5 == 0 && worked_ok,
         "sweep optimum matches 1e-9 bisection and the critical-radius set",
         std::to_string(bad5) + " mismatches" + (worked_ok ? "" : ", worked example off"));
}

static void criterion_6() {
  std::mt19937_64 rng(106);
  std::uniform_real_distribution<double> U(-1.5, 1.5);
  int bad = 0;
  for (int it = 0; it < 1000; ++it) {
    PolyCurve P = testutil::random_curve(rng, 4);
    PolyCurve Q = testutil::random_curve(rng, 4);
    Translation t(U(rng), U(rng));
    PolyCurve Pt = apply_translation(P, t);
    if (discrete_frechet(Pt, Q).value > discrete_frechet(P, Q).value + t.norm() + 1e-6)
      ++bad;
    if (continuous_frechet_value(Pt, Q, 1e-7) >
        continuous_frechet_value(P, Q, 1e-7) + t.norm() + 1e-6)
      ++bad;
  }
  report(6, bad == 0, "translation Lipschitz bound on 1000 triples, both metrics",
         std::to_string(bad) + " violations");
}

static void criterion_7() {
  std::mt19937_64 rng(107);
  int bad = 0;
  for (int it = 0; it < 100; ++it) {
    PolyCurve P = testutil::random_curve(rng, 3);
    PointSet S = testutil::random_points(rng, 4);
    ApproxVariant av = it % 2 ? ApproxVariant::DiscSubset : ApproxVariant::DiscAllPoints;
    Variant v = it % 2 ? Variant::Subset : Variant::AllPoints;
    double star = sweep_optimize(P, S, v).eps_star;
    for (double alpha : {0.5, 0.1}) {
      double hat = translate_approx(P, S, alpha, av).eps_hat;
      if (hat > (1 + alpha) * star + 1e-6 || hat < star - 1e-9) ++bad;
    }
  }
  report(7, bad == 0, "(1+alpha) translation approximation vs sweep optimum (100 x 2)",
         std::to_string(bad) + " violations");
}

static void criterion_8() {
  std::mt19937_64 rng(108);
  OracleBudget bd;
  bd.max_curve_len = 6;
  int bad = 0;
  for (int it = 0; it < 50; ++it) {
    PolyCurve P = testutil::random_curve(rng, 2);
    PointSet S = testutil::random_points(rng, 4);
    const double tol = 1e-5;
    auto [hat, m] = allpoints_3approx(P, S, tol);
    // Oracle optimum for the continuous All-points problem by bisection.
    double lo = 0, hi = bbox_diameter(P, S) + tol;
    if (brute_curve_exists(P, S, lo, OracleVariant::ContAll, bd)) hi = lo;
    while (hi - lo > tol) {
      double mid = (lo + hi) / 2;
      if (brute_curve_exists(P, S, mid, OracleVariant::ContAll, bd)) hi = mid;
      else lo = mid;
    }
    if (hat < hi - 10 * tol || hat > 3 * hi + 10 * tol) ++bad;
  }
  report(8, bad == 0, "3-approximation sandwich against the enumeration optimum (50)",
         std::to_string(bad) + " violations");
}

static void criterion_9() {
  int bad = 0;
  std::string detail;
  for (const auto& c : testutil::degenerate_cases()) {
    std::string got = testutil::run_degenerate(c);
    bool accepted = got.find("accept") != std::string::npos;
    std::string diag;
    if (accepted != c.expect_accept || !testutil::check_golden(GOLDEN_DIR, c.name, got, &diag) ||
        testutil::run_degenerate(c) != got) {
      ++bad;
      detail += c.name + " ";
    }
  }
  report(9, bad == 0, "degeneracy battery in exact-rational mode (golden logs)", detail);
}

static void criterion_10() {
  auto t0 = std::chrono::steady_clock::now();
  BenchConfig cfg;
  BenchReport rep = run_benchmark(cfg);
  double secs = now_minus(t0);
  double slope = rep.slopes["sweep_decide"];
  bool ok = slope >= 3.0 && slope <= 5.0 && secs < 300.0;
  report(10, ok, "sweep scaling slope in [3, 5] and bench under 5 minutes",
         "slope " + std::to_string(slope) + ", " + std::to_string(secs) + " s");
}

int main() {
  criteria_1_2();
  criterion_3();
  criteria_4_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  return failures == 0 ? 0 : 1;
}
