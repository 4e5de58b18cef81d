#pragma once

// Exact plane sweep for the translation-only discrete matching problem in R2.
// Translations putting vertex P_i within eps of point s form a disk centered
// at s - P_i; the decision asks for a point covered by at least one disk of
// every color. The sweep runs top to bottom over disk tops/bottoms and
// pairwise boundary intersections, maintaining per-interval color membership
// counts. Two kernels share the engine: plain doubles, and an exact mode
// where coordinates are rationals and event points live in one-radical
// quadratic extensions, making every comparison exact.

#include <array>
#include <cmath>
#include <cstdio>
#include <list>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <vector>

#include "cpsm/exact.hpp"
#include "cpsm/geometry.hpp"
#include "cpsm/matching.hpp"

namespace cpsm {

struct ColoredDisk {
  Point center;  // R2 only
  double radius = 0;
  std::vector<int> colors;
};

struct ExactDisk {
  RationalPoint center;
  Rational radius_sq;
  std::vector<int> colors;
};

enum class SweepMode { Float, Exact };

struct SweepOptions {
  SweepMode mode = SweepMode::Float;
  std::ostream* event_log = nullptr;  // one line per event for golden tests
  bool debug_validate = false;        // cross-check interval membership (Float)
};

inline std::vector<ColoredDisk> build_disks(const PolyCurve& P, const PointSet& S,
                                            double eps, Variant variant) {
  if (P.dim() != 2 || S.dim() != 2) throw std::invalid_argument("build_disks requires D=2");
  if (eps < 0) throw std::invalid_argument("negative eps");
  const int n = static_cast<int>(P.length());
  std::vector<ColoredDisk> out;
  for (int i = 0; i <= n; ++i)
    for (std::size_t j = 0; j < S.size(); ++j) {
      ColoredDisk d;
      d.center = Point(S[j][0] - P[static_cast<std::size_t>(i)][0],
                       S[j][1] - P[static_cast<std::size_t>(i)][1]);
      d.radius = eps;
      d.colors = {i};
      if (variant == Variant::AllPoints) d.colors.push_back(n + 1 + static_cast<int>(j));
      out.push_back(std::move(d));
    }
  return out;
}

inline int num_sweep_colors(const PolyCurve& P, const PointSet& S, Variant variant) {
  int n = static_cast<int>(P.length());
  return variant == Variant::Subset ? n + 1 : n + 1 + static_cast<int>(S.size());
}

namespace sweepdet {

inline int dsgn(double v) { return v < 0 ? -1 : (v > 0 ? 1 : 0); }

struct FloatKernel {
  using Scalar = double;
  using Coord = double;

  struct Disk {
    Scalar x = 0, y = 0, r2 = 0;
    std::vector<int> colors;
  };

  static Coord coord(const Scalar& v) { return v; }
  static int cmp(const Coord& a, const Coord& b) { return dsgn(a - b); }
  static double approx(const Coord& v) { return v; }
  static bool coord_is_plain(const Coord&) { return true; }

  static Coord top_y(const Disk& d) { return d.y + std::sqrt(d.r2); }
  static Coord bottom_y(const Disk& d) { return d.y - std::sqrt(d.r2); }

  struct PairX { Coord x, y; };
  // 0, 1 (tangent) or 2 intersection points of equal-radius circles.
  static int pair_intersections(const Disk& A, const Disk& B, PairX out[2]) {
    double dx = B.x - A.x, dy = B.y - A.y;
    double d2 = dx * dx + dy * dy;
    double mx = 0.5 * (A.x + B.x), my = 0.5 * (A.y + B.y);
    if (d2 > 4 * A.r2 || d2 == 0) return 0;
    if (d2 == 4 * A.r2) { out[0] = {mx, my}; return 1; }
    double s = A.r2 / d2 - 0.25;
    double q = std::sqrt(std::max(s, 0.0));
    out[0] = {mx - q * dy, my + q * dx};
    out[1] = {mx + q * dy, my - q * dx};
    return 2;
  }

  static int point_in_disk(const Coord& px, const Coord& py, const Disk& d) {
    double dx = px - d.x, dy = py - d.y;
    return dsgn(dx * dx + dy * dy - d.r2);
  }

  // sign(px - arc_x(py)) for the given side of d's boundary
  static int locate_cmp(const Coord& px, const Coord& py, const Disk& d, bool left) {
    double R = d.r2 - (py - d.y) * (py - d.y);
    if (R < 0) R = 0;
    double ax = d.x + (left ? -1.0 : 1.0) * std::sqrt(R);
    return dsgn(px - ax);
  }

  // sign(slope_a - slope_b), slope_i = -(py - ciy)/(px - cix)
  static int slope_cmp(const Coord& px, const Coord& py, const Disk& A, const Disk& B) {
    double Da = px - A.x, Na = py - A.y, Db = px - B.x, Nb = py - B.y;
    return dsgn(Nb * Da - Na * Db) * dsgn(Da) * dsgn(Db);
  }

  // sign(x''_a - x''_b) with x'' = -r^2 / D^3
  static int curv_cmp(const Coord& px, const Coord&, const Disk& A, const Disk& B) {
    double Da = px - A.x, Db = px - B.x;
    return -dsgn(Db * Db * Db - Da * Da * Da) * dsgn(Da) * dsgn(Db);
  }
};

struct ExactKernel {
  using Scalar = Rational;
  using Coord = QuadExt;

  struct Disk {
    Scalar x, y, r2;
    std::vector<int> colors;
  };

  static Coord coord(const Scalar& v) { return QuadExt(v); }
  static int cmp(const Coord& a, const Coord& b) { return compare(a, b); }
  static double approx(const Coord& v) { return v.approx(); }
  static bool coord_is_plain(const Coord& v) { return v.rational(); }

  static Coord top_y(const Disk& d) { return QuadExt(d.y, 1, d.r2); }
  static Coord bottom_y(const Disk& d) { return QuadExt(d.y, -1, d.r2); }

  struct PairX { Coord x, y; };
  static int pair_intersections(const Disk& A, const Disk& B, PairX out[2]) {
    Rational dx = B.x - A.x, dy = B.y - A.y;
    Rational d2 = dx * dx + dy * dy;
    Rational mx = (A.x + B.x) / 2, my = (A.y + B.y) / 2;
    if (sgn(d2) == 0) return 0;
    int c = sgn(d2 - 4 * A.r2);
    if (c > 0) return 0;
    if (c == 0) { out[0] = {QuadExt(mx), QuadExt(my)}; return 1; }
    Rational s = A.r2 / d2 - Rational(1, 4);
    out[0] = {QuadExt(mx, -dy, s), QuadExt(my, dx, s)};
    out[1] = {QuadExt(mx, dy, s), QuadExt(my, -dx, s)};
    return 2;
  }

  static int point_in_disk(const Coord& px, const Coord& py, const Disk& d) {
    QuadExt ex = sub_rational(px, d.x), ey = sub_rational(py, d.y);
    QuadExt dd = add_same_field(mul_same_field(ex, ex), mul_same_field(ey, ey));
    return sign(sub_rational(dd, d.r2));
  }

  static int locate_cmp(const Coord& px, const Coord& py, const Disk& d, bool left) {
    if (!px.rational()) throw std::logic_error("exact locate with irrational x");
    Rational A = px.a - d.x;
    QuadExt t = sub_rational(py, d.y);
    QuadExt R = QuadExt(d.r2 - t.a * t.a - t.b * t.b * t.s, -2 * t.a * t.b, t.s);
    int sR = sign(R);
    if (sR < 0) sR = 0;  // arc at its vertical extreme
    if (!left) {
      // sign(A - sqrt(R))
      if (sgn(A) <= 0) return (sgn(A) == 0 && sR == 0) ? 0 : -1;
      return sign(sub_same_field(QuadExt(A * A), R));
    }
    // sign(A + sqrt(R))
    if (sgn(A) >= 0) return (sgn(A) == 0 && sR == 0) ? 0 : 1;
    return sign(sub_same_field(R, QuadExt(A * A)));
  }

  static int slope_cmp(const Coord& px, const Coord& py, const Disk& A, const Disk& B) {
    QuadExt Da = sub_rational(px, A.x), Na = sub_rational(py, A.y);
    QuadExt Db = sub_rational(px, B.x), Nb = sub_rational(py, B.y);
    QuadExt v = sub_same_field(mul_same_field(Nb, Da), mul_same_field(Na, Db));
    return sign(v) * sign(Da) * sign(Db);
  }

  static int curv_cmp(const Coord& px, const Coord&, const Disk& A, const Disk& B) {
    QuadExt Da = sub_rational(px, A.x), Db = sub_rational(px, B.x);
    QuadExt Da3 = mul_same_field(mul_same_field(Da, Da), Da);
    QuadExt Db3 = mul_same_field(mul_same_field(Db, Db), Db);
    return -sign(sub_same_field(Db3, Da3)) * sign(Da) * sign(Db);
  }
};

// Sweep-line engine over a set of equal-radius colored disks.
template <class K>
class SweepEngine {
 public:
  using Disk = typename K::Disk;
  using Coord = typename K::Coord;

  SweepEngine(std::vector<Disk> disks, int num_colors, const SweepOptions& opts)
      : disks_(std::move(disks)), num_colors_(num_colors), opts_(opts) {}

  // Returns a point covered by at least one disk of every color, if any.
  std::optional<std::pair<double, double>> run() {
    std::vector<char> have(static_cast<std::size_t>(num_colors_), 0);
    for (const Disk& d : disks_)
      for (int c : d.colors) have[static_cast<std::size_t>(c)] = 1;
    for (char h : have)
      if (!h) return std::nullopt;

    build_events();
    status_.clear();
    status_.push_back(make_interval());
    handle_.assign(disks_.size(), {});

    std::size_t i = 0;
    while (i < events_.size()) {
      std::size_t j = i + 1;
      while (j < events_.size() && K::cmp(events_[j].x, events_[i].x) == 0 &&
             K::cmp(events_[j].y, events_[i].y) == 0)
        ++j;
      auto hit = process_batch(i, j);
      log_batch(i, j);
      if (hit) return hit;
      if (opts_.debug_validate) validate(i, j);
      i = j;
    }
    return std::nullopt;
  }

  // Filled by debug validation; nonzero means an inconsistency was observed.
  int validation_failures = 0;

 private:
  struct Event {
    Coord x, y;
    int kind;  // 0 top, 1 intersection, 2 bottom
    int d1, d2 = -1;
    bool tangent = false;
  };

  struct Slot {
    bool is_arc = false;
    int disk = -1;
    bool left = false;
    std::vector<int> mcount;
    long nonzero = 0;
  };
  using It = typename std::list<Slot>::iterator;

  Slot make_interval() {
    Slot s;
    s.mcount.assign(static_cast<std::size_t>(num_colors_), 0);
    return s;
  }

  void build_events() {
    events_.clear();
    for (std::size_t d = 0; d < disks_.size(); ++d) {
      events_.push_back({K::coord(disks_[d].x), K::top_y(disks_[d]), 0,
                         static_cast<int>(d)});
      events_.push_back({K::coord(disks_[d].x), K::bottom_y(disks_[d]), 2,
                         static_cast<int>(d)});
    }
    typename K::PairX pts[2];
    for (std::size_t a = 0; a < disks_.size(); ++a)
      for (std::size_t b = a + 1; b < disks_.size(); ++b) {
        int c = K::pair_intersections(disks_[a], disks_[b], pts);
        for (int q = 0; q < c; ++q)
          events_.push_back({pts[q].x, pts[q].y, 1, static_cast<int>(a),
                             static_cast<int>(b), c == 1});
      }
    std::sort(events_.begin(), events_.end(), [](const Event& u, const Event& v) {
      int c = K::cmp(u.y, v.y);
      if (c != 0) return c > 0;  // descending y
      c = K::cmp(u.x, v.x);
      if (c != 0) return c < 0;  // ascending x
      if (u.kind != v.kind) return u.kind < v.kind;
      if (u.d1 != v.d1) return u.d1 < v.d1;
      return u.d2 < v.d2;
    });
  }

  void cross(std::vector<int>& m, long& nz, int disk, bool entering) {
    for (int c : disks_[static_cast<std::size_t>(disk)].colors) {
      int& v = m[static_cast<std::size_t>(c)];
      if (entering) {
        if (v++ == 0) ++nz;
      } else {
        if (--v == 0) --nz;
      }
    }
  }

  bool covered_at_event(const It& left_i, const std::vector<int>& bdisks) {
    long cnt = left_i->nonzero;
    std::vector<int> seen;
    for (int d : bdisks)
      for (int c : disks_[static_cast<std::size_t>(d)].colors) {
        if (left_i->mcount[static_cast<std::size_t>(c)] != 0) continue;
        if (std::find(seen.begin(), seen.end(), c) == seen.end()) {
          seen.push_back(c);
          ++cnt;
        }
      }
    return cnt == num_colors_;
  }

  std::optional<std::pair<double, double>> process_batch(std::size_t lo, std::size_t hi) {
    const Coord px = events_[lo].x, py = events_[lo].y;
    std::vector<int> bdisks, tops, bottoms;
    for (std::size_t e = lo; e < hi; ++e) {
      const Event& ev = events_[e];
      auto addb = [&](int d) {
        if (std::find(bdisks.begin(), bdisks.end(), d) == bdisks.end()) bdisks.push_back(d);
      };
      addb(ev.d1);
      if (ev.d2 >= 0) addb(ev.d2);
      if (ev.kind == 0) tops.push_back(ev.d1);
      if (ev.kind == 2) bottoms.push_back(ev.d1);
    }

    // Fast path: a lone transversal crossing of two adjacent arcs.
    if (hi - lo == 1 && events_[lo].kind == 1 && !events_[lo].tangent) {
      std::pair<double, double> hit;
      int fc = fast_crossing(events_[lo], px, py, hit);
      if (fc == 1) return hit;
      if (fc == 0) return std::nullopt;
      // fc < 0: degenerate geometry, fall through to the general path
    }

    // Gather the run of active arcs passing through p.
    std::vector<It> run;
    for (int d : bdisks)
      for (int side = 0; side < 2; ++side) {
        auto& h = handle_[static_cast<std::size_t>(d)][static_cast<std::size_t>(side)];
        if (!h) continue;
        int cxc = K::cmp(px, K::coord(disks_[static_cast<std::size_t>(d)].x));
        bool through = cxc == 0 || (cxc < 0 && side == 0) || (cxc > 0 && side == 1);
        if (through) run.push_back(*h);
      }

    It left_i, right_i, blockL, blockR;
    bool have_block = false;
    if (!run.empty()) {
      auto in_run = [&](It it) {
        for (const It& r : run)
          if (r == it) return true;
        return false;
      };
      blockL = blockR = run.front();
      // Expand across alternating interval/arc slots while neighbors stay in run.
      while (blockL != status_.begin()) {
        It iv = std::prev(blockL);
        if (iv == status_.begin()) break;
        It ar = std::prev(iv);
        if (!ar->is_arc || !in_run(ar)) break;
        blockL = ar;
      }
      while (true) {
        It iv = std::next(blockR);
        if (iv == status_.end() || std::next(iv) == status_.end()) break;
        It ar = std::next(iv);
        if (!ar->is_arc || !in_run(ar)) break;
        blockR = ar;
      }
      left_i = std::prev(blockL);
      right_i = std::next(blockR);
      have_block = true;
    } else {
      // Pure disk-top (or stale event): locate the interval containing px.
      It interval = status_.begin();
      for (It it = status_.begin(); it != status_.end(); ++it) {
        if (!it->is_arc) {
          interval = it;
          continue;
        }
        if (K::locate_cmp(px, py, disks_[static_cast<std::size_t>(it->disk)], it->left) <= 0)
          break;
      }
      left_i = right_i = interval;
    }

    if (covered_at_event(left_i, bdisks))
      return std::make_pair(K::approx(px), K::approx(py));

    // Arcs continuing below p, plus the arcs of freshly opened disks.
    struct NewArc {
      int disk;
      bool left;
      int rank;  // -1: new left arc, +1: new right arc, 0: continuing
    };
    std::vector<NewArc> order;
    if (have_block) {
      for (It it = blockL;; ++it) {
        if (it->is_arc) {
          handle_[static_cast<std::size_t>(it->disk)][it->left ? 0 : 1].reset();
          if (std::find(bottoms.begin(), bottoms.end(), it->disk) == bottoms.end())
            order.push_back({it->disk, it->left, 0});
        }
        if (it == blockR) break;
      }
      status_.erase(blockL, right_i);
    }
    for (int d : tops) {
      order.push_back({d, true, -1});
      order.push_back({d, false, 1});
    }

    if (order.empty()) {
      if (left_i != right_i) status_.erase(right_i);  // pure merge at a bottom
      return std::nullopt;
    }
    if (left_i == right_i) right_i = status_.insert(std::next(left_i), *left_i);

    std::sort(order.begin(), order.end(), [&](const NewArc& a, const NewArc& b) {
      if (a.rank != b.rank) return a.rank < b.rank;
      if (a.rank != 0) return a.disk < b.disk;
      const Disk& da = disks_[static_cast<std::size_t>(a.disk)];
      const Disk& db = disks_[static_cast<std::size_t>(b.disk)];
      if (a.disk != b.disk) {
        int s = K::slope_cmp(px, py, da, db);
        if (s != 0) return s > 0;  // descending slope = ascending x below p
        int c = K::curv_cmp(px, py, da, db);
        if (c != 0) return c < 0;  // ascending curvature term
        return a.disk < b.disk;
      }
      return a.left && !b.left;
    });

    std::vector<int> m = left_i->mcount;
    long nz = left_i->nonzero;
    for (std::size_t q = 0; q < order.size(); ++q) {
      Slot arc;
      arc.is_arc = true;
      arc.disk = order[q].disk;
      arc.left = order[q].left;
      It a = status_.insert(right_i, std::move(arc));
      handle_[static_cast<std::size_t>(order[q].disk)][order[q].left ? 0 : 1] = a;
      cross(m, nz, order[q].disk, order[q].left);
      if (q + 1 < order.size()) {
        Slot iv;
        iv.mcount = m;
        iv.nonzero = nz;
        It ivi = status_.insert(right_i, std::move(iv));
        (void)ivi;
      }
    }
    if (opts_.debug_validate && m != right_i->mcount) ++validation_failures;
    return std::nullopt;
  }

  // -1: not handled (use general path), 0: handled, 1: covering point found.
  int fast_crossing(const Event& ev, const Coord& px, const Coord& py,
                    std::pair<double, double>& hit) {
    auto arc_of = [&](int d) -> std::optional<It> {
      int cxc = K::cmp(px, K::coord(disks_[static_cast<std::size_t>(d)].x));
      if (cxc == 0) return std::nullopt;
      return handle_[static_cast<std::size_t>(d)][cxc < 0 ? 0 : 1];
    };
    auto a1 = arc_of(ev.d1), a2 = arc_of(ev.d2);
    if (!a1 || !a2) return -1;
    It A = *a1, B = *a2;
    if (std::next(std::next(B)) == A) std::swap(A, B);
    if (std::next(std::next(A)) != B) return -1;  // not adjacent
    It left_i = std::prev(A);
    if (covered_at_event(left_i, {ev.d1, ev.d2})) {
      hit = {K::approx(px), K::approx(py)};
      return 1;
    }
    It mid = std::next(A);
    // mid = left + cross(A); after the swap mid' = left + cross(B)
    cross(mid->mcount, mid->nonzero, A->disk, !A->left);  // undo A
    cross(mid->mcount, mid->nonzero, B->disk, B->left);   // apply B
    std::swap(A->disk, B->disk);
    std::swap(A->left, B->left);
    handle_[static_cast<std::size_t>(A->disk)][A->left ? 0 : 1] = A;
    handle_[static_cast<std::size_t>(B->disk)][B->left ? 0 : 1] = B;
    return 0;
  }

  void log_batch(std::size_t lo, std::size_t hi) {
    if (!opts_.event_log) return;
    std::string zs;
    for (const Slot& s : status_)
      if (!s.is_arc) {
        if (!zs.empty()) zs += ' ';
        zs += std::to_string(s.nonzero);
      }
    static const char* kinds[] = {"top", "isect", "bottom"};
    for (std::size_t e = lo; e < hi; ++e) {
      const Event& ev = events_[e];
      char buf[96];
      std::snprintf(buf, sizeof buf, "%.12g %.12g %s %d", K::approx(ev.y),
                    K::approx(ev.x), kinds[ev.kind], ev.d1);
      *opts_.event_log << buf;
      if (ev.d2 >= 0) *opts_.event_log << ',' << ev.d2;
      *opts_.event_log << ' ' << zs << '\n';
    }
  }

  // Float-mode consistency probe: between this event and the next, sample a
  // point inside each interval and recount memberships naively.
  void validate(std::size_t lo, std::size_t hi) {
    if constexpr (!std::is_same_v<K, FloatKernel>) {
      (void)lo; (void)hi;
    } else {
      if (hi >= events_.size()) return;
      double y0 = K::approx(events_[lo].y), y1 = K::approx(events_[hi].y);
      // Skip slabs of (near) zero height: events that coincide up to rounding
      // leave no room to sample strictly between them.
      if (!(y0 - y1 > 1e-9 * std::max(1.0, std::abs(y0)))) return;
      double ym = 0.5 * (y0 + y1);
      std::vector<double> xs;
      std::vector<const Slot*> intervals;
      double prev_x = -1e300;
      bool bad_span = false;
      for (const Slot& s : status_) {
        if (s.is_arc) {
          const Disk& d = disks_[static_cast<std::size_t>(s.disk)];
          double R = d.r2 - (ym - d.y) * (ym - d.y);
          if (R < 0) { bad_span = true; break; }
          prev_x = d.x + (s.left ? -1.0 : 1.0) * std::sqrt(R);
          xs.push_back(prev_x);
        }
      }
      if (bad_span) { ++validation_failures; return; }
      std::size_t ai = 0;
      for (const Slot& s : status_) {
        if (s.is_arc) { ++ai; continue; }
        double xm;
        if (xs.empty()) xm = 0;
        else if (ai == 0) xm = xs.front() - 1;
        else if (ai == xs.size()) xm = xs.back() + 1;
        else {
          // Near-degenerate intervals (arcs about to cross, or crossing with
          // a rounded-off gap) have no reliably interior point to sample.
          if (!(xs[ai] - xs[ai - 1] >
                1e-9 * std::max(1.0, std::abs(xs[ai])))) continue;
          xm = 0.5 * (xs[ai - 1] + xs[ai]);
        }
        std::vector<int> naive(static_cast<std::size_t>(num_colors_), 0);
        for (std::size_t d = 0; d < disks_.size(); ++d) {
          if (!handle_[d][0] && !handle_[d][1]) continue;  // inactive
          if (K::point_in_disk(xm, ym, disks_[d]) < 0)
            for (int c : disks_[d].colors) ++naive[static_cast<std::size_t>(c)];
        }
        for (std::size_t c = 0; c < naive.size(); ++c)
          if ((naive[c] > 0) != (s.mcount[c] > 0)) { ++validation_failures; break; }
      }
    }
  }

  std::vector<Disk> disks_;
  int num_colors_;
  SweepOptions opts_;
  std::vector<Event> events_;
  std::list<Slot> status_;
  std::vector<std::array<std::optional<It>, 2>> handle_;
};

// Merge disks with coincident centers (union of colors) and dedupe colors.
template <class Disk, class Eq>
inline std::vector<Disk> merge_coincident(std::vector<Disk> in, Eq eq) {
  std::vector<Disk> out;
  for (Disk& d : in) {
    bool merged = false;
    for (Disk& o : out)
      if (eq(o, d)) {
        for (int c : d.colors)
          if (std::find(o.colors.begin(), o.colors.end(), c) == o.colors.end())
            o.colors.push_back(c);
        merged = true;
        break;
      }
    if (!merged) {
      std::sort(d.colors.begin(), d.colors.end());
      d.colors.erase(std::unique(d.colors.begin(), d.colors.end()), d.colors.end());
      out.push_back(std::move(d));
    }
  }
  return out;
}

// Radius-zero fallback: a solution must coincide with a center carrying every
// color after the coincident merge.
template <class Disk>
inline std::optional<std::pair<double, double>> zero_radius_cover(
    const std::vector<Disk>& merged, int num_colors, double (*ax)(const Disk&),
    double (*ay)(const Disk&)) {
  for (const Disk& d : merged)
    if (static_cast<int>(d.colors.size()) == num_colors) return std::make_pair(ax(d), ay(d));
  return std::nullopt;
}

}  // namespace sweepdet

inline std::optional<Translation> sweep_decide_exact(const std::vector<ExactDisk>& disks,
                                                     int num_colors,
                                                     const SweepOptions& opts = {}) {
  using K = sweepdet::ExactKernel;
  if (disks.empty()) return num_colors == 0 ? std::make_optional(Translation(0.0, 0.0))
                                            : std::nullopt;
  std::vector<typename K::Disk> ds;
  for (const ExactDisk& d : disks) {
    if (sgn(d.radius_sq) < 0) throw std::invalid_argument("negative radius");
    if (d.radius_sq != disks.front().radius_sq)
      throw std::invalid_argument("sweep requires equal radii");
    ds.push_back({d.center.x, d.center.y, d.radius_sq, d.colors});
  }
  ds = sweepdet::merge_coincident(std::move(ds), [](const auto& a, const auto& b) {
    return a.x == b.x && a.y == b.y;
  });
  if (sgn(ds.front().r2) == 0) {
    auto r = sweepdet::zero_radius_cover<typename K::Disk>(
        ds, num_colors, [](const typename K::Disk& d) { return static_cast<double>(d.x); },
        [](const typename K::Disk& d) { return static_cast<double>(d.y); });
    if (!r) return std::nullopt;
    return Translation(r->first, r->second);
  }
  sweepdet::SweepEngine<K> eng(std::move(ds), num_colors, opts);
  auto r = eng.run();
  if (!r) return std::nullopt;
  return Translation(r->first, r->second);
}

inline std::optional<Translation> sweep_decide(const std::vector<ColoredDisk>& disks,
                                               int num_colors,
                                               const SweepOptions& opts = {}) {
  if (disks.empty()) return num_colors == 0 ? std::make_optional(Translation(0.0, 0.0))
                                            : std::nullopt;
  if (opts.mode == SweepMode::Exact) {
    std::vector<ExactDisk> ex;
    for (const ColoredDisk& d : disks) {
      Rational r = rational_from_double(d.radius);
      ex.push_back({rational_point(d.center), r * r, d.colors});
    }
    return sweep_decide_exact(ex, num_colors, opts);
  }
  using K = sweepdet::FloatKernel;
  std::vector<typename K::Disk> ds;
  for (const ColoredDisk& d : disks) {
    if (d.radius < 0) throw std::invalid_argument("negative radius");
    if (d.radius != disks.front().radius)
      throw std::invalid_argument("sweep requires equal radii");
    if (d.center.dim() != 2) throw std::invalid_argument("sweep requires D=2");
    ds.push_back({d.center[0], d.center[1], d.radius * d.radius, d.colors});
  }
  ds = sweepdet::merge_coincident(std::move(ds), [](const auto& a, const auto& b) {
    return a.x == b.x && a.y == b.y;
  });
  if (ds.front().r2 == 0) {
    auto r = sweepdet::zero_radius_cover<typename K::Disk>(
        ds, num_colors, [](const typename K::Disk& d) { return d.x; },
        [](const typename K::Disk& d) { return d.y; });
    if (!r) return std::nullopt;
    return Translation(r->first, r->second);
  }
  sweepdet::SweepEngine<K> eng(std::move(ds), num_colors, opts);
  auto r = eng.run();
  if (!r) return std::nullopt;
  return Translation(r->first, r->second);
}

// Witness reconstruction at a translation found by the sweep: take the exact
// per-vertex optimum at t so the rounded translation cannot make the discrete
// decision flake.
inline MatchResult reconstruct_at(const PolyCurve& P, const PointSet& S,
                                  const Translation& t, Variant variant) {
  PolyCurve moved = apply_translation(P, t);
  auto [eps_eff, res] = discrete_cpsm_optimize(moved, S, variant);
  res.translation = t;
  return res;
}

inline std::optional<MatchResult> tcpsm_sweep_decide(const PolyCurve& P, const PointSet& S,
                                                     double eps, Variant variant,
                                                     const SweepOptions& opts = {}) {
  auto disks = build_disks(P, S, eps, variant);
  auto t = sweep_decide(disks, num_sweep_colors(P, S, variant), opts);
  if (!t) return std::nullopt;
  return reconstruct_at(P, S, *t, variant);
}

// Disks from exactly interpreted coordinates; `pd`/`sd` are the double views
// of the same instance (used for witness reconstruction only).
inline std::vector<ExactDisk> build_disks_exact(const std::vector<RationalPoint>& pverts,
                                                const std::vector<RationalPoint>& spts,
                                                const Rational& eps_sq, Variant variant) {
  if (pverts.empty() || spts.empty()) throw std::invalid_argument("empty instance");
  const int n = static_cast<int>(pverts.size()) - 1;
  std::vector<ExactDisk> out;
  for (int i = 0; i <= n; ++i)
    for (std::size_t j = 0; j < spts.size(); ++j) {
      ExactDisk d;
      d.center = RationalPoint(spts[j].x - pverts[static_cast<std::size_t>(i)].x,
                               spts[j].y - pverts[static_cast<std::size_t>(i)].y);
      d.radius_sq = eps_sq;
      d.colors = {i};
      if (variant == Variant::AllPoints) d.colors.push_back(n + 1 + static_cast<int>(j));
      out.push_back(std::move(d));
    }
  return out;
}

inline std::optional<MatchResult> tcpsm_sweep_decide_exact(
    const std::vector<RationalPoint>& pverts, const std::vector<RationalPoint>& spts,
    const Rational& eps_sq, Variant variant, const PolyCurve& pd, const PointSet& sd,
    const SweepOptions& opts = {}) {
  auto disks = build_disks_exact(pverts, spts, eps_sq, variant);
  int nc = variant == Variant::Subset
               ? static_cast<int>(pverts.size())
               : static_cast<int>(pverts.size() + spts.size());
  auto t = sweep_decide_exact(disks, nc, opts);
  if (!t) return std::nullopt;
  return reconstruct_at(pd, sd, *t, variant);
}

struct CriticalRadius {
  enum class Kind { Zero, PairTangency, TripleCocircularity };
  double value = 0;
  Kind kind = Kind::Zero;
  std::array<int, 3> centers{-1, -1, -1};
};

struct SweepOptimum {
  double eps_star = 0;
  Translation t;
  MatchResult match;
  CriticalRadius critical;
};

namespace sweepdet {

// All candidate squared radii at which the arrangement's face structure can
// change: zero, pairwise half-distances, and circumradii of center triples.
inline std::vector<std::pair<Rational, CriticalRadius>> critical_radii_sq(
    const std::vector<RationalPoint>& centers) {
  std::vector<std::pair<Rational, CriticalRadius>> out;
  out.push_back({Rational(0), {0.0, CriticalRadius::Kind::Zero, {-1, -1, -1}}});
  const int m = static_cast<int>(centers.size());
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      Rational d2 = dist_sq(centers[static_cast<std::size_t>(i)],
                            centers[static_cast<std::size_t>(j)]);
      out.push_back({d2 / 4, {0.0, CriticalRadius::Kind::PairTangency, {i, j, -1}}});
    }
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int l = j + 1; l < m; ++l) {
        const RationalPoint& A = centers[static_cast<std::size_t>(i)];
        const RationalPoint& B = centers[static_cast<std::size_t>(j)];
        const RationalPoint& C = centers[static_cast<std::size_t>(l)];
        Rational crossv = (B.x - A.x) * (C.y - A.y) - (B.y - A.y) * (C.x - A.x);
        if (sgn(crossv) == 0) continue;  // collinear: no circumcircle
        Rational a2 = dist_sq(B, C), b2 = dist_sq(A, C), c2 = dist_sq(A, B);
        Rational r2 = a2 * b2 * c2 / (4 * crossv * crossv);
        out.push_back({r2, {0.0, CriticalRadius::Kind::TripleCocircularity, {i, j, l}}});
      }
  return out;
}

}  // namespace sweepdet

// Core optimizer over a prebuilt (unmerged) exact disk set; binary search on
// the sorted candidate radii with the exact decision sweep.
inline SweepOptimum sweep_optimize_core(std::vector<ExactDisk> exbase, int num_colors,
                                        const PolyCurve& P, const PointSet& S,
                                        Variant variant, const SweepOptions& opts) {
  exbase = sweepdet::merge_coincident(std::move(exbase), [](const auto& a, const auto& b) {
    return a.center == b.center;
  });
  std::vector<RationalPoint> centers;
  for (const ExactDisk& d : exbase) centers.push_back(d.center);

  auto cands = sweepdet::critical_radii_sq(centers);
  std::sort(cands.begin(), cands.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  cands.erase(std::unique(cands.begin(), cands.end(),
                          [](const auto& a, const auto& b) { return a.first == b.first; }),
              cands.end());

  // Optimization always runs the exact kernel: candidate radii are irrational
  // square roots, which the float kernel cannot order reliably.
  auto decide_r2 = [&](const Rational& r2) -> std::optional<Translation> {
    std::vector<ExactDisk> ds = exbase;
    for (ExactDisk& d : ds) d.radius_sq = r2;
    return sweep_decide_exact(ds, num_colors, opts);
  };

  std::size_t lo = 0, hi = cands.size() - 1;
  std::optional<Translation> best_t = decide_r2(cands[hi].first);
  if (!best_t) throw std::logic_error("sweep_optimize: no feasible candidate radius");
  if (auto t0 = decide_r2(cands[0].first)) {
    hi = 0;
    best_t = t0;
  } else {
    while (lo + 1 < hi) {
      std::size_t mid = (lo + hi) / 2;
      if (auto t = decide_r2(cands[mid].first)) {
        hi = mid;
        best_t = t;
      } else {
        lo = mid;
      }
    }
  }

  SweepOptimum out;
  out.critical = cands[hi].second;
  out.critical.value = std::sqrt(static_cast<double>(cands[hi].first));
  out.eps_star = out.critical.value;
  out.t = *best_t;
  out.match = reconstruct_at(P, S, out.t, variant);
  return out;
}

inline SweepOptimum sweep_optimize(const PolyCurve& P, const PointSet& S, Variant variant,
                                   const SweepOptions& opts = {}) {
  auto base = build_disks(P, S, 1.0, variant);
  std::vector<ExactDisk> exbase;
  for (const ColoredDisk& d : base)
    exbase.push_back({rational_point(d.center), Rational(1), d.colors});
  return sweep_optimize_core(std::move(exbase), num_sweep_colors(P, S, variant), P, S,
                             variant, opts);
}

inline SweepOptimum sweep_optimize_exact(const std::vector<RationalPoint>& pverts,
                                         const std::vector<RationalPoint>& spts,
                                         Variant variant, const PolyCurve& pd,
                                         const PointSet& sd, const SweepOptions& opts = {}) {
  auto exbase = build_disks_exact(pverts, spts, Rational(1), variant);
  int nc = variant == Variant::Subset
               ? static_cast<int>(pverts.size())
               : static_cast<int>(pverts.size() + spts.size());
  return sweep_optimize_core(std::move(exbase), nc, pd, sd, variant, opts);
}

}  // namespace cpsm
