#pragma once

#include <cmath>

namespace superdark {

// Double-double value: an unevaluated sum hi + lo with |lo| <= ulp(hi)/2,
// giving roughly 32 significant decimal digits.
//
// The decay rate of a strongly subradiant state is a quadratic form whose
// value can sit 15+ orders of magnitude below the magnitude of its
// individual terms, so plain double accumulation returns pure rounding
// noise there. All such forms are accumulated in this type.
struct ddouble {
  double hi = 0.0;
  double lo = 0.0;

  constexpr ddouble() = default;
  constexpr ddouble(double h) : hi(h) {}
  constexpr ddouble(double h, double l) : hi(h), lo(l) {}

  double value() const { return hi + lo; }
};

namespace detail {

inline void two_sum(double a, double b, double& s, double& e) {
  s = a + b;
  const double bb = s - a;
  e = (a - (s - bb)) + (b - bb);
}

// Requires |a| >= |b| or a == 0.
inline void quick_two_sum(double a, double b, double& s, double& e) {
  s = a + b;
  e = b - (s - a);
}

inline void two_prod(double a, double b, double& p, double& e) {
  p = a * b;
  e = std::fma(a, b, -p);
}

}  // namespace detail

inline ddouble operator+(ddouble a, ddouble b) {
  double s1, s2, t1, t2;
  detail::two_sum(a.hi, b.hi, s1, s2);
  detail::two_sum(a.lo, b.lo, t1, t2);
  s2 += t1;
  detail::quick_two_sum(s1, s2, s1, s2);
  s2 += t2;
  detail::quick_two_sum(s1, s2, s1, s2);
  return {s1, s2};
}

inline ddouble operator-(ddouble a) { return {-a.hi, -a.lo}; }

inline ddouble operator-(ddouble a, ddouble b) { return a + (-b); }

inline ddouble operator*(ddouble a, ddouble b) {
  double p1, p2;
  detail::two_prod(a.hi, b.hi, p1, p2);
  p2 += a.hi * b.lo + a.lo * b.hi;
  detail::quick_two_sum(p1, p2, p1, p2);
  return {p1, p2};
}

inline ddouble operator*(ddouble a, double b) { return a * ddouble(b); }

inline ddouble operator/(ddouble a, double b) {
  const double q1 = a.hi / b;
  double p1, p2;
  detail::two_prod(q1, b, p1, p2);
  ddouble r = a - ddouble(p1, p2);
  const double q2 = (r.hi + r.lo) / b;
  double s1, s2;
  detail::quick_two_sum(q1, q2, s1, s2);
  return {s1, s2};
}

// Exact product of two doubles.
inline ddouble dd_product(double a, double b) {
  double p, e;
  detail::two_prod(a, b, p, e);
  return {p, e};
}

inline double abs_value(ddouble a) { return std::fabs(a.value()); }

}  // namespace superdark
