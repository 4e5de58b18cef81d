#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cpsm/approx.hpp"
#include "cpsm/oracle.hpp"
#include "cpsm/sweep.hpp"
#include "util.hpp"

using namespace cpsm;

TEST_CASE("start alignment candidates") {
  PolyCurve P{Point(0, 0)};
  PointSet S{Point(1, 2)};
  auto c = start_align_candidates(P, S);
  REQUIRE(c.size() == 1);
  CHECK(c[0] == Translation(1.0, 2.0));

  PolyCurve P2{Point(1, 1), Point(2, 1)};
  PointSet S2{Point(1, 1), Point(2, 2)};
  auto c2 = start_align_candidates(P2, S2);
  REQUIRE(c2.size() == 2);
  CHECK(c2[0] == Translation(0.0, 0.0));
  CHECK(c2[1] == Translation(1.0, 1.0));
}

TEST_CASE("lattice enumeration covers the spec'd point count") {
  LatticeSpec spec{Translation(0.0, 0.0), 1.0, 0.4};
  int count = 0;
  approxdet::for_each_lattice_point(spec, [&](const Translation&) { ++count; });
  int per_axis = static_cast<int>(std::ceil(2 * spec.half_width / spec.spacing)) + 1;
  CHECK(count == per_axis * per_axis);
}

TEST_CASE("exact hit short-circuits to zero") {
  PolyCurve P{Point(0, 0), Point(1, 0), Point(1, 1)};
  PointSet S{Point(0, 0), Point(1, 0), Point(1, 1), Point(4, 4)};
  auto r = translate_approx(P, S, 0.5, ApproxVariant::DiscSubset);
  CHECK(r.eps_hat == 0.0);
  CHECK(r.t == Translation(0.0, 0.0));
}

TEST_CASE("worked example stays within the guarantee") {
  PolyCurve P{Point(0, 0), Point(2, 0)};
  PointSet S{Point(0, 0), Point(1, 0)};
  auto r = translate_approx(P, S, 0.1, ApproxVariant::DiscSubset);
  CHECK(r.eps_hat <= 0.55 + 1e-9);
  CHECK(r.eps_hat >= 0.5 - 1e-9);
  CHECK(verify_match(P, r.match, false, 1e-9));
}

TEST_CASE("random discrete instances sandwich against the sweep optimum") {
  std::mt19937_64 rng(51);
  for (int it = 0; it < 25; ++it) {
    PolyCurve P = testutil::random_curve(rng, 3);
    PointSet S = testutil::random_points(rng, 4);
    ApproxVariant av = it % 2 ? ApproxVariant::DiscSubset : ApproxVariant::DiscAllPoints;
    Variant v = it % 2 ? Variant::Subset : Variant::AllPoints;
    double alpha = it % 3 ? 0.5 : 0.2;
    auto opt = sweep_optimize(P, S, v);
    auto r = translate_approx(P, S, alpha, av);
    CHECK(r.eps_hat >= opt.eps_star - 1e-9);
    CHECK(r.eps_hat <= (1 + alpha) * opt.eps_star + 1e-6);
    CHECK(verify_match(P, r.match, false, 1e-9));
  }
}

TEST_CASE("start alignment alone is a 2-approximation") {
  std::mt19937_64 rng(52);
  for (int it = 0; it < 20; ++it) {
    PolyCurve P = testutil::random_curve(rng, 3);
    PointSet S = testutil::random_points(rng, 4);
    auto opt = sweep_optimize(P, S, Variant::Subset);
    double best = std::numeric_limits<double>::infinity();
    for (const Translation& t : start_align_candidates(P, S))
      best = std::min(best,
                      discrete_cpsm_optimize(apply_translation(P, t), S,
                                             Variant::Subset).first);
    CHECK(best <= 2 * opt.eps_star + 1e-9);
  }
}

TEST_CASE("halving alpha never worsens the result") {
  std::mt19937_64 rng(53);
  for (int it = 0; it < 10; ++it) {
    PolyCurve P = testutil::random_curve(rng, 3);
    PointSet S = testutil::random_points(rng, 3);
    auto coarse = translate_approx(P, S, 0.8, ApproxVariant::DiscSubset);
    auto fine = translate_approx(P, S, 0.4, ApproxVariant::DiscSubset);
    CHECK(fine.eps_hat <= coarse.eps_hat + 1e-9);
  }
}

TEST_CASE("continuous subset approximation stays near the continuous optimum") {
  std::mt19937_64 rng(54);
  for (int it = 0; it < 5; ++it) {
    PolyCurve P = testutil::random_curve(rng, 2);
    PointSet S = testutil::random_points(rng, 3);
    auto r = translate_approx(P, S, 0.5, ApproxVariant::ContSubset, 1e-4);
    CHECK(verify_match(P, r.match, true, 1e-3));
    // Never better than the best translation can possibly be, which is
    // bounded below by the value at the returned translation itself.
    auto [at_t, m] =
        continuous_subset_optimize(apply_translation(P, r.t), S, 1e-4);
    CHECK(std::abs(r.eps_hat - at_t) <= 3e-4);
  }
}

TEST_CASE("continuous all-points 3+alpha scheme") {
  PolyCurve P{Point(0, 0), Point(1, 0), Point(1, 1)};
  PointSet SP{Point(0, 0), Point(1, 0), Point(1, 1)};
  auto z = translate_approx_allpoints_cont(P, SP, 0.5, 1e-6);
  CHECK(z.eps_hat <= 1e-6);

  // Tiny instances against a fine-grid oracle optimum.
  std::mt19937_64 rng(55);
  OracleBudget bd;
  bd.grid_step = 0.08;
  for (int it = 0; it < 4; ++it) {
    PolyCurve P2 = testutil::random_curve(rng, 2);
    PointSet S2 = testutil::random_points(rng, 3);
    auto r = translate_approx_allpoints_cont(P2, S2, 0.5, 1e-4);
    CHECK(verify_match(P2, r.match, true, 1e-3));
    // Any scanned translation's NS value upper-bounds its local optimum, so
    // the best scanned value bounds eps_opt from above and the (3 + alpha)
    // guarantee transfers to it.
    double best = std::numeric_limits<double>::infinity();
    auto scan = [&](double tx, double ty) {
      auto [v, m] = allpoints_3approx(apply_translation(P2, Translation(tx, ty)), S2, 1e-3);
      best = std::min(best, v);
    };
    for (const Translation& t0 : start_align_candidates(P2, S2))
      for (double dx = -0.3; dx <= 0.3; dx += bd.grid_step)
        for (double dy = -0.3; dy <= 0.3; dy += bd.grid_step)
          scan(t0[0] + dx, t0[1] + dy);
    CHECK(r.eps_hat <= (3 + 0.5) * best + 1e-3);
  }
}

TEST_CASE("shifting the instance shifts the returned translation") {
  std::mt19937_64 rng(56);
  std::uniform_real_distribution<double> U(-2, 2);
  for (int it = 0; it < 6; ++it) {
    PolyCurve P = testutil::random_curve(rng, 2);
    PointSet S = testutil::random_points(rng, 3);
    Translation v(U(rng), U(rng));
    std::vector<Point> sp;
    for (std::size_t j = 0; j < S.size(); ++j) sp.push_back(translate(S[j], v));
    auto a = translate_approx(P, S, 0.5, ApproxVariant::DiscSubset);
    auto b = translate_approx(P, PointSet(sp), 0.5, ApproxVariant::DiscSubset);
    CHECK(b.eps_hat == doctest::Approx(a.eps_hat).epsilon(1e-6));
    CHECK(b.t[0] - a.t[0] == doctest::Approx(v[0]).epsilon(1e-6).scale(1));
    CHECK(b.t[1] - a.t[1] == doctest::Approx(v[1]).epsilon(1e-6).scale(1));
  }
}
