#pragma once

// Degenerate sweep instances shared by the module tests and the acceptance
// run. Each case is exercised in exact-rational mode and its event log plus
// outcome is compared against a golden file.

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cpsm/io.hpp"
#include "cpsm/sweep.hpp"

namespace testutil {

struct DegenerateCase {
  std::string name;
  cpsm::PolyCurve P;
  cpsm::PointSet S;
  double eps;
  cpsm::Variant variant;
  bool expect_accept;
};

inline std::vector<DegenerateCase> degenerate_cases() {
  using cpsm::Point;
  using cpsm::PolyCurve;
  using cpsm::PointSet;
  using cpsm::Variant;
  return {
      {"coincident_centers",
       PolyCurve{Point(0, 0), Point(1, 0)},
       PointSet{Point(0, 0), Point(1, 0)}, 0.5, Variant::Subset, true},
      {"cocircular_centers",
       PolyCurve{Point(0, 0)},
       PointSet{Point(1, 0), Point(0, 1), Point(-1, 0), Point(0, -1)},
       1.0, Variant::AllPoints, true},
      {"collinear_curve",
       PolyCurve{Point(0, 0), Point(1, 0), Point(2, 0), Point(3, 0)},
       PointSet{Point(0, 0), Point(2, 0)}, 0.75, Variant::Subset, true},
      {"radius_zero",
       PolyCurve{Point(0, 0), Point(1, 0)},
       PointSet{Point(0, 0), Point(1, 0)}, 0.0, Variant::Subset, true},
      {"single_vertex",
       PolyCurve{Point(5, 5)},
       PointSet{Point(0, 0), Point(1, 1)}, 0.25, Variant::Subset, true},
      {"tangent_reject",
       PolyCurve{Point(0, 0), Point(2, 0)},
       PointSet{Point(0, 0), Point(1, 0)}, 0.4, Variant::Subset, false},
      {"vertical_tops",
       PolyCurve{Point(0, 0)},
       PointSet{Point(0, 0), Point(0, 1), Point(0, 2), Point(0, -1)},
       0.5, Variant::AllPoints, false},
  };
}

// Runs one case with the exact kernel and returns the event log followed by
// the outcome line.
inline std::string run_degenerate(const DegenerateCase& c) {
  std::ostringstream log;
  cpsm::SweepOptions opts;
  opts.mode = cpsm::SweepMode::Exact;
  opts.event_log = &log;
  std::vector<cpsm::RationalPoint> pv, sp;
  for (std::size_t i = 0; i < c.P.num_vertices(); ++i)
    pv.push_back(cpsm::rational_point(c.P[i]));
  for (std::size_t j = 0; j < c.S.size(); ++j)
    sp.push_back(cpsm::rational_point(c.S[j]));
  cpsm::Rational e = cpsm::rational_from_double(c.eps);
  auto disks = cpsm::build_disks_exact(pv, sp, e * e, c.variant);
  int nc = c.variant == cpsm::Variant::Subset
               ? static_cast<int>(pv.size())
               : static_cast<int>(pv.size() + sp.size());
  auto t = cpsm::sweep_decide_exact(disks, nc, opts);
  if (t) {
    char buf[80];
    std::snprintf(buf, sizeof buf, "accept %.12g %.12g\n", (*t)[0], (*t)[1]);
    log << buf;
  } else {
    log << "reject\n";
  }
  return log.str();
}

// Golden comparison: missing files are written (blessed) on first run.
inline bool check_golden(const std::string& dir, const std::string& name,
                         const std::string& got, std::string* diag) {
  std::string path = dir + "/" + name + ".log";
  std::ifstream in(path);
  if (!in) {
    std::ofstream out(path);
    out << got;
    return static_cast<bool>(out);
  }
  std::stringstream want;
  want << in.rdbuf();
  if (want.str() == got) return true;
  if (diag) *diag = "mismatch vs " + path;
  return false;
}

}  // namespace testutil
