#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "cpsm/bench.hpp"
#include "cpsm/io.hpp"

using namespace cpsm;

namespace {

// Minimal well-formedness check: every tag closes, attributes quoted.
bool well_formed_xml(const std::string& doc) {
  std::vector<std::string> stack;
  std::size_t i = 0;
  while (i < doc.size()) {
    if (doc[i] != '<') {
      if (doc[i] == '>') return false;
      ++i;
      continue;
    }
    std::size_t end = doc.find('>', i);
    if (end == std::string::npos) return false;
    std::string tag = doc.substr(i + 1, end - i - 1);
    if (std::count(tag.begin(), tag.end(), '"') % 2 != 0) return false;
    if (!tag.empty() && tag[0] == '/') {
      if (stack.empty() || stack.back() != tag.substr(1)) return false;
      stack.pop_back();
    } else if (!tag.empty() && tag.back() != '/') {
      stack.push_back(tag.substr(0, tag.find_first_of(" \t\n")));
    }
    i = end + 1;
  }
  return stack.empty();
}

int count_of(const std::string& doc, const std::string& needle) {
  int n = 0;
  for (std::size_t p = doc.find(needle); p != std::string::npos;
       p = doc.find(needle, p + 1))
    ++n;
  return n;
}

}  // namespace

TEST_CASE("json parsing") {
  Instance inst = parse_instance(R"({"curve": [[0,0],[1,0]], "points": [[0,0]]})");
  CHECK(inst.curve.length() == 1);
  CHECK(inst.points.size() == 1);
  CHECK(inst.dropped_duplicates == 0);
  REQUIRE(inst.exact_curve);
  CHECK((*inst.exact_curve)[1].x == Rational(1));

  Instance dup = parse_instance(
      R"({"curve": [[0,0],[1,0]], "points": [[0,0],[0.5,1],[0,0]]})");
  CHECK(dup.points.size() == 2);
  CHECK(dup.dropped_duplicates == 1);
  REQUIRE(dup.exact_points);
  CHECK(dup.exact_points->size() == 2);
  // Exact decimal interpretation survives the dedupe.
  CHECK((*dup.exact_points)[1].x == Rational(1, 2));

  CHECK_THROWS_AS(parse_instance(R"({"curve": [[0,0],[1,0,0]], "points": [[0,0]]})"),
                  ParseError);
  CHECK_THROWS_AS(parse_instance(R"({"curve": [[0,0]], "points": [[0,0,0]]})"),
                  ParseError);
  CHECK_THROWS_AS(parse_instance(R"({"points": [[0,0]]})"), ParseError);
  CHECK_THROWS_AS(parse_instance(""), ParseError);
  CHECK_THROWS_AS(parse_instance(R"({"curve": [], "points": [[0,0]]})"), ParseError);
  CHECK_THROWS_AS(
      parse_instance(R"({"curve": [[0,0]], "points": [[0,0]], "dimension": 3})"),
      ParseError);
}

TEST_CASE("exact decimals are exact") {
  Instance inst = parse_instance(R"({"curve": [[0.1,0.2],[1,0]], "points": [[0.3,0]]})");
  REQUIRE(inst.exact_curve);
  CHECK((*inst.exact_curve)[0].x == Rational(1, 10));
  CHECK((*inst.exact_curve)[0].y == Rational(1, 5));
  CHECK((*inst.exact_points)[0].x == Rational(3, 10));
  // ... which the double values only approximate.
  CHECK(rational_from_double(inst.curve[0][0]) != Rational(1, 10));
}

TEST_CASE("csv parsing") {
  Instance inst = parse_instance("c 0 0\nc 1 0\np 0.5 0.25\n# comment\np 0.5 0.25\n");
  CHECK(inst.curve.length() == 1);
  CHECK(inst.points.size() == 1);
  CHECK(inst.dropped_duplicates == 1);
  REQUIRE(inst.exact_points);
  CHECK((*inst.exact_points)[0].y == Rational(1, 4));

  CHECK_THROWS_AS(parse_instance("c 0 0\nq 1 0\n"), ParseError);
  CHECK_THROWS_AS(parse_instance("c 0 0\nc 1 0 0\n"), ParseError);
  CHECK_THROWS_AS(parse_instance("c 0 zero\n"), ParseError);
  CHECK_THROWS_AS(parse_instance("c 0 0\n"), ParseError);
}

TEST_CASE("parse-serialize roundtrip") {
  Instance inst = parse_instance(
      R"({"curve": [[0,0],[1.5,0.25]], "points": [[0,0],[2,1]],
          "metadata": {"name": "demo", "seed": 7}})");
  Instance again = parse_instance(serialize_instance(inst));
  CHECK(again.curve == inst.curve);
  CHECK(again.points.points == inst.points.points);
  CHECK(again.name == "demo");
  CHECK(again.seed == 7);
}

TEST_CASE("report roundtrip") {
  ResultReport r;
  r.op = "tcpsm sweep-opt";
  r.variant = "subset";
  r.accepted = true;
  r.eps_opt = 0.5;
  r.translation = Translation(-0.5, 0.0);
  r.curve = PolyCurve{Point(0, 0), Point(1, 0)};
  r.witness_summary = "coupling of 2 steps";
  r.wall_time_sec = 0.01;
  ResultReport s = report_from_json(report_to_json(r));
  CHECK(s.op == r.op);
  CHECK(s.variant == r.variant);
  CHECK(s.accepted == r.accepted);
  CHECK(*s.eps_opt == *r.eps_opt);
  CHECK(*s.translation == *r.translation);
  CHECK(*s.curve == *r.curve);
  CHECK(s.witness_summary == r.witness_summary);
}

TEST_CASE("svg rendering") {
  Instance inst = parse_instance(
      R"({"curve": [[0,0],[1,0],[2,1]], "points": [[0,0],[1,0],[2,0]]})");
  std::string plain = render_svg(inst);
  CHECK(well_formed_xml(plain));
  CHECK(count_of(plain, "<line ") == 2);       // n segments
  CHECK(count_of(plain, "<circle ") == 3);     // k dots
  CHECK(count_of(plain, "<polyline") == 0);

  ResultReport r;
  r.accepted = true;
  r.eps_achieved = 0.5;
  r.translation = Translation(0.25, 0.0);
  r.curve = PolyCurve{Point(0, 0), Point(1, 0), Point(2, 0)};
  std::string full = render_svg(inst, &r, true);
  CHECK(well_formed_xml(full));
  CHECK(count_of(full, "<polyline") == 1);
  CHECK(count_of(full, "<circle ") == 6);  // k dots + k eps disks
  // The translated curve's first rendered x coordinate reflects the shift.
  CHECK(full.find("x1=\"0.25\"") != std::string::npos);

  Instance d3 = parse_instance(R"({"curve": [[0,0,0]], "points": [[0,0,0]]})");
  CHECK_THROWS(render_svg(d3));
}

TEST_CASE("benchmark report shape") {
  BenchConfig cfg;
  cfg.sizes = {2, 3};
  cfg.discrete_sizes = {8, 16};
  cfg.instances_per_size = 1;
  BenchReport rep = run_benchmark(cfg);
  CHECK(rep.rows.size() == 4);  // |sizes| x |solvers|
  CHECK(rep.slopes.count("sweep_decide") == 1);
  CHECK(rep.slopes.count("discrete_subset_decide") == 1);
  std::string tsv = rep.tsv();
  CHECK(count_of(tsv, "\n") >= 5);
  CHECK(tsv.find("solver\tn\tk\tmedian_sec") == 0);
}
