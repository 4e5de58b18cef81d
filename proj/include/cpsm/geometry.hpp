#pragma once

// Basic geometric value types shared by every other header: points in R^D,
// segments, polygonal curves, point sets and translations. Everything is an
// immutable value; all free functions are pure.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace cpsm {

struct Point {
  std::vector<double> c;

  Point() = default;
  Point(std::initializer_list<double> init) : c(init) { validate(); }
  explicit Point(std::vector<double> coords) : c(std::move(coords)) { validate(); }
  Point(double x, double y) : c{x, y} {}

  std::size_t dim() const { return c.size(); }
  double operator[](std::size_t i) const { return c[i]; }
  double& operator[](std::size_t i) { return c[i]; }

  bool operator==(const Point& o) const { return c == o.c; }
  bool operator!=(const Point& o) const { return !(*this == o); }

  void validate() const {
    for (double v : c)
      if (!std::isfinite(v)) throw std::invalid_argument("non-finite coordinate");
  }
};

struct Translation {
  std::vector<double> v;

  Translation() = default;
  Translation(std::initializer_list<double> init) : v(init) {}
  explicit Translation(std::vector<double> comps) : v(std::move(comps)) {}
  Translation(double x, double y) : v{x, y} {}

  std::size_t dim() const { return v.size(); }
  double operator[](std::size_t i) const { return v[i]; }

  double norm() const {
    double s = 0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
  }

  bool operator==(const Translation& o) const { return v == o.v; }
};

inline void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string("dimension mismatch in ") + what);
}

inline double dist_sq(const Point& p, const Point& q) {
  require_same_dim(p.dim(), q.dim(), "dist_sq");
  double s = 0;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    double d = p[i] - q[i];
    s += d * d;
  }
  return s;
}

inline double dist(const Point& p, const Point& q) { return std::sqrt(dist_sq(p, q)); }

struct Segment {
  Point start, end;

  Segment() = default;
  Segment(Point a, Point b) : start(std::move(a)), end(std::move(b)) {
    require_same_dim(start.dim(), end.dim(), "Segment");
  }

  std::size_t dim() const { return start.dim(); }
  // Degenerate segments (start == end) are treated as points everywhere.
  bool degenerate() const { return start == end; }
};

// Point on segment at parameter t in [0,1].
inline Point segment_point(const Segment& seg, double t) {
  Point p = seg.start;
  for (std::size_t i = 0; i < p.dim(); ++i) p[i] += t * (seg.end[i] - seg.start[i]);
  return p;
}

inline double dist_point_segment(const Point& p, const Segment& seg) {
  require_same_dim(p.dim(), seg.dim(), "dist_point_segment");
  double len_sq = dist_sq(seg.start, seg.end);
  if (len_sq == 0.0) return dist(p, seg.start);
  double dot = 0;
  for (std::size_t i = 0; i < p.dim(); ++i)
    dot += (p[i] - seg.start[i]) * (seg.end[i] - seg.start[i]);
  double t = std::clamp(dot / len_sq, 0.0, 1.0);
  return dist(p, segment_point(seg, t));
}

struct PolyCurve {
  std::vector<Point> vertices;

  PolyCurve() = default;
  PolyCurve(std::initializer_list<Point> init) : vertices(init) { validate(); }
  explicit PolyCurve(std::vector<Point> vs) : vertices(std::move(vs)) { validate(); }

  void validate() const {
    if (vertices.empty()) throw std::invalid_argument("empty curve");
    for (const Point& p : vertices)
      require_same_dim(p.dim(), vertices.front().dim(), "PolyCurve");
  }

  std::size_t dim() const { return vertices.front().dim(); }
  // Number of segments; a single-vertex curve has length 0.
  std::size_t length() const { return vertices.size() - 1; }
  std::size_t num_vertices() const { return vertices.size(); }
  const Point& operator[](std::size_t i) const { return vertices[i]; }

  Segment segment(std::size_t i) const { return Segment(vertices[i], vertices[i + 1]); }

  // Point at global position s in [0, length()]; segment i covers [i, i+1].
  Point at(double s) const {
    if (length() == 0) return vertices.front();
    s = std::clamp(s, 0.0, static_cast<double>(length()));
    std::size_t i = std::min(static_cast<std::size_t>(std::floor(s)), length() - 1);
    return segment_point(segment(i), s - static_cast<double>(i));
  }

  bool operator==(const PolyCurve& o) const { return vertices == o.vertices; }
};

struct PointSet {
  std::vector<Point> points;

  PointSet() = default;
  PointSet(std::initializer_list<Point> init) : points(init) { validate(); }
  explicit PointSet(std::vector<Point> pts) : points(std::move(pts)) { validate(); }

  void validate() const {
    if (points.empty()) throw std::invalid_argument("empty point set");
    for (const Point& p : points)
      require_same_dim(p.dim(), points.front().dim(), "PointSet");
  }

  std::size_t dim() const { return points.front().dim(); }
  std::size_t size() const { return points.size(); }
  const Point& operator[](std::size_t i) const { return points[i]; }
};

// Deduplicates exact coordinate duplicates, preserving first-occurrence order.
// Returns the number of points dropped.
inline std::size_t dedupe_points(std::vector<Point>& pts) {
  std::vector<Point> out;
  for (const Point& p : pts) {
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  }
  std::size_t dropped = pts.size() - out.size();
  pts = std::move(out);
  return dropped;
}

inline Point translate(const Point& p, const Translation& t) {
  require_same_dim(p.dim(), t.dim(), "translate");
  Point q = p;
  for (std::size_t i = 0; i < q.dim(); ++i) q[i] += t[i];
  return q;
}

inline PolyCurve apply_translation(const PolyCurve& c, const Translation& t) {
  require_same_dim(c.dim(), t.dim(), "apply_translation");
  std::vector<Point> vs;
  vs.reserve(c.num_vertices());
  for (const Point& p : c.vertices) vs.push_back(translate(p, t));
  return PolyCurve(std::move(vs));
}

// Diameter of the axis-aligned bounding box of a collection of points.
inline double bbox_diameter(const std::vector<const std::vector<Point>*>& groups) {
  std::size_t d = 0;
  for (auto* g : groups)
    if (!g->empty()) d = g->front().dim();
  if (d == 0) return 0.0;
  std::vector<double> lo(d, std::numeric_limits<double>::infinity());
  std::vector<double> hi(d, -std::numeric_limits<double>::infinity());
  bool any = false;
  for (auto* g : groups)
    for (const Point& p : *g) {
      any = true;
      for (std::size_t i = 0; i < d; ++i) {
        lo[i] = std::min(lo[i], p[i]);
        hi[i] = std::max(hi[i], p[i]);
      }
    }
  if (!any) return 0.0;
  double s = 0;
  for (std::size_t i = 0; i < d; ++i) s += (hi[i] - lo[i]) * (hi[i] - lo[i]);
  return std::sqrt(s);
}

inline double bbox_diameter(const PolyCurve& c, const PointSet& s) {
  return bbox_diameter({&c.vertices, &s.points});
}

inline double bbox_diameter(const PolyCurve& a, const PolyCurve& b) {
  return bbox_diameter({&a.vertices, &b.vertices});
}

}  // namespace cpsm
