#pragma once

// Instance parsing (JSON and CSV), result serialization and SVG rendering.
// JSON numbers are additionally captured as raw decimal text so the exact
// solver modes can interpret coordinates as true rationals rather than their
// nearest doubles.

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cpsm/exact.hpp"
#include "cpsm/geometry.hpp"

namespace cpsm {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Instance {
  PolyCurve curve;
  PointSet points;
  std::string name;
  long seed = -1;
  // Exact decimal interpretation of the same coordinates (D=2 only).
  std::optional<std::vector<RationalPoint>> exact_curve;
  std::optional<std::vector<RationalPoint>> exact_points;
  std::size_t dropped_duplicates = 0;
};

namespace iodet {

// SAX consumer collecting, per top-level key, the raw decimal text of every
// number in document order. The DOM parse handles structure; this recovers the
// exact values the text denoted.
struct RawNumbers : nlohmann::json_sax<nlohmann::json> {
  std::vector<std::string> curve, points;
  int depth = 0;
  std::string section;

  std::vector<std::string>* sink() {
    if (section == "curve") return &curve;
    if (section == "points") return &points;
    return nullptr;
  }
  bool null() override { return true; }
  bool boolean(bool) override { return true; }
  bool number_integer(number_integer_t v) override {
    if (auto* s = sink()) s->push_back(std::to_string(v));
    return true;
  }
  bool number_unsigned(number_unsigned_t v) override {
    if (auto* s = sink()) s->push_back(std::to_string(v));
    return true;
  }
  bool number_float(number_float_t, const string_t& raw) override {
    if (auto* s = sink()) s->push_back(raw);
    return true;
  }
  bool string(string_t&) override { return true; }
  bool binary(binary_t&) override { return true; }
  bool start_object(std::size_t) override { ++depth; return true; }
  bool key(string_t& k) override {
    if (depth == 1) section = k;
    return true;
  }
  bool end_object() override { --depth; if (depth == 0) section.clear(); return true; }
  bool start_array(std::size_t) override { return true; }
  bool end_array() override { return true; }
  bool parse_error(std::size_t pos, const std::string&,
                   const nlohmann::json::exception& ex) override {
    throw ParseError("JSON parse error at byte " + std::to_string(pos) + ": " + ex.what());
  }
};

inline std::vector<Point> json_coords(const nlohmann::json& arr, const char* what) {
  if (!arr.is_array() || arr.empty())
    throw ParseError(std::string(what) + " must be a non-empty array");
  std::vector<Point> out;
  for (const auto& row : arr) {
    if (!row.is_array() || row.empty())
      throw ParseError(std::string(what) + " entries must be coordinate arrays");
    std::vector<double> c;
    for (const auto& v : row) {
      if (!v.is_number()) throw ParseError(std::string(what) + " has a non-numeric coordinate");
      c.push_back(v.get<double>());
    }
    out.push_back(Point(std::move(c)));
  }
  return out;
}

inline std::optional<std::vector<RationalPoint>> exact_from_raw(
    const std::vector<Point>& pts, const std::vector<std::string>& raw) {
  if (pts.empty() || pts.front().dim() != 2) return std::nullopt;
  if (raw.size() != pts.size() * 2) return std::nullopt;
  std::vector<RationalPoint> out;
  for (std::size_t i = 0; i < pts.size(); ++i)
    out.push_back(RationalPoint(rational_from_decimal(raw[2 * i]),
                                rational_from_decimal(raw[2 * i + 1])));
  return out;
}

inline std::string fmt_double(double v) {
  char buf[32];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

}  // namespace iodet

inline Instance parse_instance_json(const std::string& text) {
  iodet::RawNumbers raw;
  nlohmann::json::sax_parse(text, &raw);
  nlohmann::json doc = nlohmann::json::parse(text);
  if (!doc.is_object()) throw ParseError("instance document must be a JSON object");
  if (!doc.contains("curve")) throw ParseError("missing \"curve\"");
  if (!doc.contains("points")) throw ParseError("missing \"points\"");

  Instance inst;
  std::vector<Point> cv = iodet::json_coords(doc["curve"], "curve");
  std::vector<Point> pv = iodet::json_coords(doc["points"], "points");
  std::size_t dim = cv.front().dim();
  for (const Point& p : cv)
    if (p.dim() != dim) throw ParseError("mixed coordinate dimensions in curve");
  for (const Point& p : pv)
    if (p.dim() != dim) throw ParseError("mixed coordinate dimensions (curve vs points)");
  if (doc.contains("dimension") && doc["dimension"].get<std::size_t>() != dim)
    throw ParseError("declared dimension disagrees with coordinates");

  inst.exact_curve = iodet::exact_from_raw(cv, raw.curve);
  auto exact_pts = iodet::exact_from_raw(pv, raw.points);

  std::vector<Point> before = pv;
  inst.dropped_duplicates = dedupe_points(pv);
  if (inst.dropped_duplicates > 0 && exact_pts) {
    std::vector<RationalPoint> ep;
    for (const Point& p : pv) {
      for (std::size_t i = 0; i < before.size(); ++i)
        if (before[i] == p) { ep.push_back((*exact_pts)[i]); break; }
    }
    exact_pts = std::move(ep);
  }
  inst.exact_points = std::move(exact_pts);
  inst.curve = PolyCurve(std::move(cv));
  inst.points = PointSet(std::move(pv));
  if (doc.contains("metadata")) {
    const auto& md = doc["metadata"];
    if (md.is_object()) {
      if (md.contains("name") && md["name"].is_string()) inst.name = md["name"];
      if (md.contains("seed") && md["seed"].is_number_integer()) inst.seed = md["seed"];
    }
  }
  return inst;
}

inline Instance parse_instance_csv(const std::string& text) {
  std::vector<Point> cv, pv;
  std::vector<RationalPoint> ec, ep;
  bool exact_ok = true;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0, dim = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    if (tag != "c" && tag != "p")
      throw ParseError("line " + std::to_string(lineno) + ": row must start with 'c' or 'p'");
    std::vector<double> coords;
    std::vector<std::string> toks;
    std::string tok;
    while (ls >> tok) {
      toks.push_back(tok);
      try {
        std::size_t used = 0;
        coords.push_back(std::stod(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(lineno) + ": bad number '" + tok + "'");
      }
    }
    if (coords.empty())
      throw ParseError("line " + std::to_string(lineno) + ": no coordinates");
    if (dim == 0) dim = coords.size();
    if (coords.size() != dim)
      throw ParseError("line " + std::to_string(lineno) + ": dimension mismatch");
    RationalPoint rp;
    if (dim == 2) {
      try {
        rp = RationalPoint(rational_from_decimal(toks[0]), rational_from_decimal(toks[1]));
      } catch (const std::exception&) {
        exact_ok = false;
      }
    }
    if (tag == "c") { cv.push_back(Point(coords)); if (dim == 2) ec.push_back(rp); }
    else { pv.push_back(Point(coords)); if (dim == 2) ep.push_back(rp); }
  }
  if (cv.empty()) throw ParseError("no curve rows ('c')");
  if (pv.empty()) throw ParseError("no point rows ('p')");
  Instance inst;
  if (dim == 2 && exact_ok) {
    inst.exact_curve = std::move(ec);
    inst.exact_points = std::move(ep);
  }
  std::vector<Point> before = pv;
  inst.dropped_duplicates = dedupe_points(pv);
  if (inst.dropped_duplicates > 0 && inst.exact_points) {
    std::vector<RationalPoint> kept;
    for (const Point& p : pv)
      for (std::size_t i = 0; i < before.size(); ++i)
        if (before[i] == p) { kept.push_back((*inst.exact_points)[i]); break; }
    inst.exact_points = std::move(kept);
  }
  inst.curve = PolyCurve(std::move(cv));
  inst.points = PointSet(std::move(pv));
  return inst;
}

inline Instance parse_instance(const std::string& text) {
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    if (ch == '{') return parse_instance_json(text);
    return parse_instance_csv(text);
  }
  throw ParseError("empty instance document");
}

inline std::string serialize_instance(const Instance& inst) {
  nlohmann::json doc;
  auto pts = [](const std::vector<Point>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const Point& p : v) {
      nlohmann::json row = nlohmann::json::array();
      for (std::size_t i = 0; i < p.dim(); ++i) row.push_back(p[i]);
      a.push_back(row);
    }
    return a;
  };
  doc["curve"] = pts(inst.curve.vertices);
  doc["points"] = pts(inst.points.points);
  doc["dimension"] = inst.curve.dim();
  if (!inst.name.empty() || inst.seed >= 0) {
    nlohmann::json md = nlohmann::json::object();
    if (!inst.name.empty()) md["name"] = inst.name;
    if (inst.seed >= 0) md["seed"] = inst.seed;
    doc["metadata"] = md;
  }
  return doc.dump(2);
}

struct ResultReport {
  std::string op;
  std::string variant;
  bool accepted = false;
  std::optional<double> eps_query, eps_achieved, eps_opt;
  std::optional<Translation> translation;
  std::optional<PolyCurve> curve;
  std::string witness_summary;
  double wall_time_sec = 0;
};

inline nlohmann::json report_to_json(const ResultReport& r) {
  nlohmann::json j;
  j["op"] = r.op;
  if (!r.variant.empty()) j["variant"] = r.variant;
  j["accepted"] = r.accepted;
  if (r.eps_query) j["eps_query"] = *r.eps_query;
  if (r.eps_achieved) j["eps_achieved"] = *r.eps_achieved;
  if (r.eps_opt) j["eps_opt"] = *r.eps_opt;
  if (r.translation) j["translation"] = r.translation->v;
  if (r.curve) {
    nlohmann::json a = nlohmann::json::array();
    for (const Point& p : r.curve->vertices) a.push_back(p.c);
    j["curve"] = a;
  }
  if (!r.witness_summary.empty()) j["witness"] = r.witness_summary;
  j["wall_time_sec"] = r.wall_time_sec;
  return j;
}

inline ResultReport report_from_json(const nlohmann::json& j) {
  ResultReport r;
  r.op = j.value("op", "");
  r.variant = j.value("variant", "");
  r.accepted = j.value("accepted", false);
  if (j.contains("eps_query")) r.eps_query = j["eps_query"].get<double>();
  if (j.contains("eps_achieved")) r.eps_achieved = j["eps_achieved"].get<double>();
  if (j.contains("eps_opt")) r.eps_opt = j["eps_opt"].get<double>();
  if (j.contains("translation"))
    r.translation = Translation(j["translation"].get<std::vector<double>>());
  if (j.contains("curve")) {
    std::vector<Point> vs;
    for (const auto& row : j["curve"]) vs.push_back(Point(row.get<std::vector<double>>()));
    r.curve = PolyCurve(std::move(vs));
  }
  r.witness_summary = j.value("witness", "");
  r.wall_time_sec = j.value("wall_time_sec", 0.0);
  return r;
}

// SVG rendering of an instance and (optionally) a match: P as solid segments,
// S as dots, the witness curve dashed, eps-disks faint. SVG's y axis points
// down, so y coordinates are negated.
inline std::string render_svg(const Instance& inst, const ResultReport* result = nullptr,
                              bool draw_eps_disks = false) {
  if (inst.curve.dim() != 2) throw std::invalid_argument("render_svg requires D=2");
  PolyCurve P = inst.curve;
  if (result && result->translation) P = apply_translation(P, *result->translation);

  double lox = 1e300, loy = 1e300, hix = -1e300, hiy = -1e300;
  auto grow = [&](double x, double y, double pad) {
    lox = std::min(lox, x - pad); hix = std::max(hix, x + pad);
    loy = std::min(loy, y - pad); hiy = std::max(hiy, y + pad);
  };
  double eps = result && result->eps_achieved ? *result->eps_achieved : 0.0;
  for (const Point& p : P.vertices) grow(p[0], -p[1], 0);
  for (const Point& p : inst.points.points) grow(p[0], -p[1], draw_eps_disks ? eps : 0);
  if (result && result->curve)
    for (const Point& p : result->curve->vertices) grow(p[0], -p[1], 0);
  double w = std::max(hix - lox, 1e-9), h = std::max(hiy - loy, 1e-9);
  double m = 0.05 * std::max(w, h);
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\""
      << lox - m << ' ' << loy - m << ' ' << w + 2 * m << ' ' << h + 2 * m << "\">\n";
  double sw = 0.01 * std::max(w, h);
  if (draw_eps_disks && eps > 0)
    for (const Point& p : inst.points.points)
      out << "  <circle cx=\"" << p[0] << "\" cy=\"" << -p[1] << "\" r=\"" << eps
          << "\" fill=\"#4a90d9\" fill-opacity=\"0.12\" stroke=\"none\"/>\n";
  for (std::size_t i = 0; i < P.length(); ++i)
    out << "  <line x1=\"" << P[i][0] << "\" y1=\"" << -P[i][1] << "\" x2=\"" << P[i + 1][0]
        << "\" y2=\"" << -P[i + 1][1] << "\" stroke=\"#222\" stroke-width=\"" << sw
        << "\"/>\n";
  for (const Point& p : inst.points.points)
    out << "  <circle cx=\"" << p[0] << "\" cy=\"" << -p[1] << "\" r=\"" << 1.5 * sw
        << "\" fill=\"#c0392b\"/>\n";
  if (result && result->curve && result->curve->num_vertices() > 1) {
    out << "  <polyline points=\"";
    for (const Point& p : result->curve->vertices) out << p[0] << ',' << -p[1] << ' ';
    out << "\" fill=\"none\" stroke=\"#27ae60\" stroke-width=\"" << sw
        << "\" stroke-dasharray=\"" << 3 * sw << ' ' << 2 * sw << "\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace cpsm
