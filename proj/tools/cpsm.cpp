// Command-line front end. Reads instance documents (JSON or CSV), runs the
// requested solver, re-verifies any witness before printing, and emits a
// ResultReport as JSON on stdout.
//
// Exit codes: 0 accepted/computed, 1 rejected, 2 usage or parse error,
// 3 internal verification failure.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "cpsm/approx.hpp"
#include "cpsm/bench.hpp"
#include "cpsm/frechet.hpp"
#include "cpsm/io.hpp"
#include "cpsm/matching.hpp"
#include "cpsm/oracle.hpp"
#include "cpsm/sweep.hpp"

namespace {

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream f(path);
  if (!f) throw cpsm::ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

cpsm::Variant to_variant(const std::string& v) {
  if (v == "subset") return cpsm::Variant::Subset;
  if (v == "allpoints") return cpsm::Variant::AllPoints;
  throw CLI::ValidationError("--variant must be subset or allpoints");
}

// Recompute the stated distance with the frechet module; refuse to print an
// unverifiable witness.
void verify_or_die(const cpsm::PolyCurve& P, const cpsm::MatchResult& m, bool continuous) {
  if (!cpsm::verify_match(P, m, continuous)) {
    std::cerr << "internal error: witness failed re-verification\n";
    std::exit(3);
  }
}

int emit(const cpsm::ResultReport& rep, const cpsm::Instance* inst,
         const std::string& svg_path, bool eps_disks) {
  if (!svg_path.empty() && inst) {
    std::ofstream f(svg_path);
    f << cpsm::render_svg(*inst, &rep, eps_disks);
  }
  std::cout << cpsm::report_to_json(rep).dump(2) << "\n";
  return rep.accepted ? 0 : 1;
}

std::string summarize(const cpsm::MatchResult& m) {
  std::ostringstream ss;
  ss << "curve of " << m.curve.num_vertices() << " vertices, coupling of "
     << m.coupling.steps.size() << " steps";
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curve/point-set matching under the Frechet distance"};
  app.require_subcommand(1);

  std::string file = "-", file2, variant = "subset", svg_path;
  double eps = -1, alpha = 0.25, tol = 1e-9;
  bool exact_rational = false, continuous = false, eps_disks = false;
  std::uint64_t seed = 1;

  auto add_common = [&](CLI::App* c, bool needs_eps) {
    c->add_option("file", file, "instance file (JSON or CSV), '-' for stdin");
    auto* e = c->add_option("--eps", eps, "query radius");
    if (needs_eps) e->required();
    c->add_option("--variant", variant, "subset|allpoints")
        ->check(CLI::IsMember({"subset", "allpoints"}));
    c->add_option("--tol", tol, "bisection tolerance");
    c->add_flag("--exact-rational", exact_rational,
                "interpret coordinates exactly as decimals (R2 sweep paths)");
    c->add_option("--svg", svg_path, "write an SVG rendering to this path");
    c->add_flag("--eps-disks", eps_disks, "include eps disks in the SVG");
    return c;
  };

  auto* fre = app.add_subcommand("frechet", "Frechet distance between two curves");
  std::string fre_mode;
  fre->add_option("mode", fre_mode, "discrete|continuous")
      ->required()
      ->check(CLI::IsMember({"discrete", "continuous"}));
  fre->add_option("file", file, "first instance (its curve is P)");
  fre->add_option("file2", file2, "second instance (its curve is Q); default: points of file in order");
  fre->add_option("--eps", eps, "decide instead of computing the value");
  fre->add_option("--tol", tol, "value tolerance (continuous)");

  auto* cp = app.add_subcommand("cpsm", "fixed-curve matching");
  std::string cp_mode;
  cp->add_option("mode", cp_mode, "decide|opt")->required()->check(CLI::IsMember({"decide", "opt"}));
  add_common(cp, false);
  cp->add_flag("--continuous", continuous, "continuous variants (allpoints: NS 3-approx)");

  auto* tc = app.add_subcommand("tcpsm", "matching under translation");
  std::string tc_mode;
  tc->add_option("mode", tc_mode, "sweep-decide|sweep-opt|approx")
      ->required()
      ->check(CLI::IsMember({"sweep-decide", "sweep-opt", "approx"}));
  add_common(tc, false);
  tc->add_option("--alpha", alpha, "approximation slack (approx mode)");
  tc->add_flag("--continuous", continuous, "continuous variants (approx mode)");

  auto* orc = app.add_subcommand("oracle", "brute-force reference solvers");
  std::string orc_mode;
  int max_curve_len = 0;
  double grid_step = 0.05, bbox_margin = 0.1;
  orc->add_option("mode", orc_mode, "curve|grid")->required()->check(CLI::IsMember({"curve", "grid"}));
  add_common(orc, true);
  orc->add_flag("--continuous", continuous, "continuous variants (curve mode)");
  bool ns = false;
  orc->add_flag("--ns", ns, "restrict to NS-compliant curves (continuous allpoints)");
  orc->add_option("--max-curve-len", max_curve_len, "cap on witness curve vertices");
  orc->add_option("--grid-step", grid_step, "translation grid step");
  orc->add_option("--bbox-margin", bbox_margin, "translation grid margin");

  auto* ren = app.add_subcommand("render", "render an instance to SVG");
  ren->add_option("file", file, "instance file");
  ren->add_option("--svg", svg_path, "output path")->required();
  ren->add_option("--eps", eps, "draw eps disks at this radius");

  auto* ben = app.add_subcommand("bench", "timing and scaling report");
  ben->add_option("--seed", seed, "RNG seed");
  int bench_reps = 3;
  ben->add_option("--reps", bench_reps, "instances per size");

  CLI11_PARSE(app, argc, argv);

  try {
    if (fre->parsed()) {
      cpsm::Instance a = cpsm::parse_instance(read_input(file));
      cpsm::PolyCurve P = a.curve, Q = file2.empty()
                                           ? cpsm::PolyCurve(a.points.points)
                                           : cpsm::parse_instance(read_input(file2)).curve;
      Timer t;
      cpsm::ResultReport rep;
      rep.op = "frechet-" + fre_mode;
      if (eps >= 0) {
        rep.eps_query = eps;
        rep.accepted = fre_mode == "discrete"
                           ? cpsm::discrete_frechet(P, Q).value <= eps
                           : cpsm::continuous_frechet_decide(P, Q, eps).ok;
      } else {
        double v = fre_mode == "discrete" ? cpsm::discrete_frechet(P, Q).value
                                          : cpsm::continuous_frechet_value(P, Q, tol);
        rep.eps_achieved = v;
        rep.accepted = true;
      }
      rep.wall_time_sec = t.elapsed();
      std::cout << cpsm::report_to_json(rep).dump(2) << "\n";
      return rep.accepted ? 0 : 1;
    }

    if (cp->parsed()) {
      cpsm::Instance inst = cpsm::parse_instance(read_input(file));
      if (inst.dropped_duplicates)
        std::cerr << "warning: dropped " << inst.dropped_duplicates << " duplicate point(s)\n";
      cpsm::Variant v = to_variant(variant);
      Timer t;
      cpsm::ResultReport rep;
      rep.op = "cpsm-" + cp_mode;
      rep.variant = variant;
      std::optional<cpsm::MatchResult> m;
      if (cp_mode == "decide") {
        if (eps < 0) throw CLI::ValidationError("--eps required for decide");
        rep.eps_query = eps;
        if (!continuous)
          m = v == cpsm::Variant::Subset
                  ? cpsm::discrete_subset_decide(inst.curve, inst.points, eps)
                  : cpsm::discrete_allpoints_decide(inst.curve, inst.points, eps);
        else
          m = v == cpsm::Variant::Subset
                  ? cpsm::continuous_subset_decide(inst.curve, inst.points, eps)
                  : cpsm::ns_compliant_decide(inst.curve, inst.points, eps);
      } else {
        double val;
        cpsm::MatchResult mr;
        if (!continuous)
          std::tie(val, mr) = cpsm::discrete_cpsm_optimize(inst.curve, inst.points, v);
        else if (v == cpsm::Variant::Subset)
          std::tie(val, mr) = cpsm::continuous_subset_optimize(inst.curve, inst.points, tol);
        else
          std::tie(val, mr) = cpsm::allpoints_3approx(inst.curve, inst.points, tol);
        rep.eps_opt = val;
        m = mr;
      }
      if (m) {
        verify_or_die(inst.curve, *m, continuous);
        rep.accepted = true;
        rep.eps_achieved = m->epsilon;
        rep.curve = m->curve;
        rep.witness_summary = summarize(*m);
      }
      rep.wall_time_sec = t.elapsed();
      return emit(rep, &inst, svg_path, eps_disks);
    }

    if (tc->parsed()) {
      cpsm::Instance inst = cpsm::parse_instance(read_input(file));
      if (inst.dropped_duplicates)
        std::cerr << "warning: dropped " << inst.dropped_duplicates << " duplicate point(s)\n";
      cpsm::Variant v = to_variant(variant);
      Timer t;
      cpsm::ResultReport rep;
      rep.op = "tcpsm-" + tc_mode;
      rep.variant = variant;
      std::optional<cpsm::MatchResult> m;
      cpsm::SweepOptions opts;
      if (exact_rational) opts.mode = cpsm::SweepMode::Exact;
      bool have_exact = inst.exact_curve && inst.exact_points;
      if (tc_mode == "sweep-decide") {
        if (eps < 0) throw CLI::ValidationError("--eps required for sweep-decide");
        rep.eps_query = eps;
        if (exact_rational && have_exact) {
          cpsm::Rational re = cpsm::rational_from_double(eps);
          m = cpsm::tcpsm_sweep_decide_exact(*inst.exact_curve, *inst.exact_points, re * re,
                                             v, inst.curve, inst.points, opts);
        } else {
          m = cpsm::tcpsm_sweep_decide(inst.curve, inst.points, eps, v, opts);
        }
      } else if (tc_mode == "sweep-opt") {
        cpsm::SweepOptimum opt =
            exact_rational && have_exact
                ? cpsm::sweep_optimize_exact(*inst.exact_curve, *inst.exact_points, v,
                                             inst.curve, inst.points, opts)
                : cpsm::sweep_optimize(inst.curve, inst.points, v, opts);
        rep.eps_opt = opt.eps_star;
        m = opt.match;
      } else {  // approx
        cpsm::ApproxResult ar;
        if (!continuous)
          ar = cpsm::translate_approx(inst.curve, inst.points, alpha,
                                      v == cpsm::Variant::Subset
                                          ? cpsm::ApproxVariant::DiscSubset
                                          : cpsm::ApproxVariant::DiscAllPoints,
                                      tol);
        else if (v == cpsm::Variant::Subset)
          ar = cpsm::translate_approx(inst.curve, inst.points, alpha,
                                      cpsm::ApproxVariant::ContSubset, tol);
        else
          ar = cpsm::translate_approx_allpoints_cont(inst.curve, inst.points, alpha, tol);
        rep.eps_opt = ar.eps_hat;
        m = ar.match;
      }
      if (m) {
        verify_or_die(inst.curve, *m, continuous && tc_mode == "approx");
        rep.accepted = true;
        rep.eps_achieved = m->epsilon;
        rep.translation = m->translation;
        rep.curve = m->curve;
        rep.witness_summary = summarize(*m);
      }
      rep.wall_time_sec = t.elapsed();
      return emit(rep, &inst, svg_path, eps_disks);
    }

    if (orc->parsed()) {
      cpsm::Instance inst = cpsm::parse_instance(read_input(file));
      cpsm::Variant v = to_variant(variant);
      Timer t;
      cpsm::ResultReport rep;
      rep.op = "oracle-" + orc_mode;
      rep.variant = variant;
      rep.eps_query = eps;
      cpsm::OracleBudget budget;
      budget.max_curve_len = max_curve_len;
      budget.grid_step = grid_step;
      budget.bbox_margin = bbox_margin;
      if (orc_mode == "curve") {
        cpsm::OracleVariant ov;
        if (!continuous)
          ov = v == cpsm::Variant::Subset ? cpsm::OracleVariant::DiscSubset
                                          : cpsm::OracleVariant::DiscAll;
        else if (v == cpsm::Variant::Subset)
          ov = cpsm::OracleVariant::ContSubset;
        else
          ov = ns ? cpsm::OracleVariant::ContAllNS : cpsm::OracleVariant::ContAll;
        auto q = cpsm::brute_curve_exists(inst.curve, inst.points, eps, ov, budget);
        if (q) {
          rep.accepted = true;
          rep.curve = *q;
        }
      } else {
        auto g = cpsm::grid_translation_scan(inst.curve, inst.points, eps, v, budget);
        rep.accepted = bool(g.t);
        if (g.t) rep.translation = *g.t;
        std::ostringstream ss;
        ss << "best grid margin " << g.best_margin;
        rep.witness_summary = ss.str();
      }
      rep.wall_time_sec = t.elapsed();
      return emit(rep, &inst, svg_path, eps_disks);
    }

    if (ren->parsed()) {
      cpsm::Instance inst = cpsm::parse_instance(read_input(file));
      cpsm::ResultReport rep;
      rep.op = "render";
      rep.accepted = true;
      if (eps >= 0) rep.eps_achieved = eps;
      std::ofstream f(svg_path);
      if (!f) throw cpsm::ParseError("cannot write " + svg_path);
      f << cpsm::render_svg(inst, eps >= 0 ? &rep : nullptr, eps >= 0);
      std::cout << cpsm::report_to_json(rep).dump(2) << "\n";
      return 0;
    }

    if (ben->parsed()) {
      cpsm::BenchConfig cfg;
      cfg.seed = seed;
      cfg.instances_per_size = bench_reps;
      std::cout << cpsm::run_benchmark(cfg).tsv();
      return 0;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const cpsm::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
