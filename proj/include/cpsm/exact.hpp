#pragma once

// Exact arithmetic for the robust sweep mode: arbitrary-precision rationals
// plus one-radical quadratic extensions a + b*sqrt(s). All event coordinates
// produced by an equal-radius disk arrangement live in such a field, so every
// comparison the sweep makes can be decided exactly.

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "cpsm/geometry.hpp"

namespace cpsm {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline int sgn(const Rational& r) { return r.sign(); }

// Exact value of a decimal string such as "-12.5e-3". Used when instances
// request exact interpretation of their coordinate text.
inline Rational rational_from_decimal(const std::string& text) {
  std::size_t i = 0;
  auto fail = [&] { throw std::invalid_argument("bad decimal: " + text); };
  if (text.empty()) fail();
  bool neg = false;
  if (text[i] == '+' || text[i] == '-') neg = text[i++] == '-';
  BigInt digits = 0;
  long frac_digits = 0;
  bool any = false;
  for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
    digits = digits * 10 + (text[i] - '0');
    any = true;
  }
  if (i < text.size() && text[i] == '.') {
    ++i;
    for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
      digits = digits * 10 + (text[i] - '0');
      ++frac_digits;
      any = true;
    }
  }
  if (!any) fail();
  long exp10 = 0;
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    if (i >= text.size()) fail();
    char* end = nullptr;
    exp10 = std::strtol(text.c_str() + i, &end, 10);
    if (end != text.c_str() + text.size()) fail();
    i = text.size();
  }
  if (i != text.size()) fail();
  Rational r(digits);
  long e = exp10 - frac_digits;
  BigInt pow10 = 1;
  for (long j = 0; j < std::labs(e); ++j) pow10 *= 10;
  if (e >= 0)
    r *= Rational(pow10);
  else
    r /= Rational(pow10);
  if (neg) r = -r;
  return r;
}

// a + b * sqrt(s), with s >= 0. Both coordinates of one sweep event share the
// same radical, but comparisons across events mix radicals, which sign2 below
// handles.
struct QuadExt {
  Rational a, b, s;

  QuadExt() : a(0), b(0), s(0) {}
  QuadExt(Rational av) : a(std::move(av)), b(0), s(0) {}
  QuadExt(Rational av, Rational bv, Rational sv)
      : a(std::move(av)), b(std::move(bv)), s(std::move(sv)) {
    if (sgn(s) < 0) throw std::invalid_argument("negative radicand");
    if (sgn(s) == 0 || sgn(b) == 0) { b = 0; s = 0; }
  }

  bool rational() const { return sgn(b) == 0; }

  double approx() const {
    double v = static_cast<double>(a);
    if (sgn(b) != 0) v += static_cast<double>(b) * std::sqrt(static_cast<double>(s));
    return v;
  }
};

// sign of a + b*sqrt(s)
inline int sign1(const Rational& a, const Rational& b, const Rational& s) {
  if (sgn(b) == 0 || sgn(s) == 0) return sgn(a);
  if (sgn(a) == 0) return sgn(b);
  int sa = sgn(a), sb = sgn(b);
  if (sa == sb) return sa;
  return sa * sgn(a * a - b * b * s);
}

inline int sign(const QuadExt& x) { return sign1(x.a, x.b, x.s); }

// sign of A + B*sqrt(s) + C*sqrt(t)
inline int sign2(const Rational& A, const Rational& B, const Rational& s,
                 const Rational& C, const Rational& t) {
  int sv = (sgn(t) == 0) ? 0 : sgn(C);
  int su = sign1(A, B, s);
  if (sv == 0) return su;
  if (su == 0) return sv;
  if (su == sv) return su;
  // |u| vs |v|: u^2 = A^2 + B^2 s + 2AB sqrt(s), v^2 = C^2 t
  int d = sign1(A * A + B * B * s - C * C * t, 2 * A * B, s);
  return su * d;
}

// sign of x - y where x, y may carry different radicals
inline int compare(const QuadExt& x, const QuadExt& y) {
  return sign2(x.a - y.a, x.b, x.s, -y.b, y.s);
}

inline bool operator==(const QuadExt& x, const QuadExt& y) { return compare(x, y) == 0; }
inline bool operator<(const QuadExt& x, const QuadExt& y) { return compare(x, y) < 0; }

inline QuadExt add_same_field(const QuadExt& x, const QuadExt& y) {
  if (x.rational()) return QuadExt(x.a + y.a, y.b, y.s);
  if (y.rational()) return QuadExt(x.a + y.a, x.b, x.s);
  if (x.s != y.s) throw std::logic_error("QuadExt radical mismatch");
  return QuadExt(x.a + y.a, x.b + y.b, x.s);
}

inline QuadExt sub_same_field(const QuadExt& x, const QuadExt& y) {
  return add_same_field(x, QuadExt(-y.a, -y.b, y.s));
}

inline QuadExt mul_same_field(const QuadExt& x, const QuadExt& y) {
  if (x.rational()) return QuadExt(x.a * y.a, x.a * y.b, y.s);
  if (y.rational()) return QuadExt(x.a * y.a, y.a * x.b, x.s);
  if (x.s != y.s) throw std::logic_error("QuadExt radical mismatch");
  return QuadExt(x.a * y.a + x.b * y.b * x.s, x.a * y.b + x.b * y.a, x.s);
}

inline QuadExt sub_rational(const QuadExt& x, const Rational& r) {
  return QuadExt(x.a - r, x.b, x.s);
}

struct RationalPoint {
  Rational x, y;

  RationalPoint() : x(0), y(0) {}
  RationalPoint(Rational xv, Rational yv) : x(std::move(xv)), y(std::move(yv)) {}

  bool operator==(const RationalPoint& o) const { return x == o.x && y == o.y; }
};

// Doubles are dyadic rationals, so this conversion is exact.
inline Rational rational_from_double(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("non-finite value");
  return Rational(v);
}

inline RationalPoint rational_point(const Point& p) {
  if (p.dim() != 2) throw std::invalid_argument("rational_point requires D=2");
  return RationalPoint(rational_from_double(p[0]), rational_from_double(p[1]));
}

inline Rational dist_sq(const RationalPoint& p, const RationalPoint& q) {
  Rational dx = p.x - q.x, dy = p.y - q.y;
  return dx * dx + dy * dy;
}

}  // namespace cpsm
