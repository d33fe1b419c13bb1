#ifndef OMEGALAB_CORE_DD_HPP
#define OMEGALAB_CORE_DD_HPP

// Double-double (pair) arithmetic: an unevaluated sum of two binary64
// values carrying ~32 significant digits.  Used for oracle runs and for
// the extended-precision accumulation requested by PrecisionPolicy.
// Algorithms follow the usual error-free transformation patterns
// (two_sum / two_prod with fma).

#include <cmath>
#include <cstdlib>

namespace omegalab {

struct DD {
  double hi = 0.0;
  double lo = 0.0;

  DD() = default;
  DD(double h) : hi(h), lo(0.0) {}
  DD(double h, double l) : hi(h), lo(l) {}

  double to_double() const { return hi + lo; }
};

namespace dd_detail {
inline DD fast_two_sum(double a, double b) {
  // requires |a| >= |b|
  double s = a + b;
  return DD(s, b - (s - a));
}
inline DD two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  return DD(s, (a - (s - bb)) + (b - bb));
}
inline DD two_prod(double a, double b) {
  double p = a * b;
  return DD(p, std::fma(a, b, -p));
}
} // namespace dd_detail

inline DD operator+(DD a, DD b) {
  DD s = dd_detail::two_sum(a.hi, b.hi);
  DD t = dd_detail::two_sum(a.lo, b.lo);
  double c = s.lo + t.hi;
  DD v = dd_detail::fast_two_sum(s.hi, c);
  return dd_detail::fast_two_sum(v.hi, t.lo + v.lo);
}
inline DD operator+(DD a, double b) {
  DD s = dd_detail::two_sum(a.hi, b);
  return dd_detail::fast_two_sum(s.hi, a.lo + s.lo);
}
inline DD operator+(double a, DD b) { return b + a; }

inline DD operator-(DD a) { return DD(-a.hi, -a.lo); }
inline DD operator-(DD a, DD b) { return a + (-b); }
inline DD operator-(DD a, double b) { return a + (-b); }
inline DD operator-(double a, DD b) { return (-b) + a; }

inline DD operator*(DD a, DD b) {
  DD p = dd_detail::two_prod(a.hi, b.hi);
  double t = a.hi * b.lo + a.lo * b.hi + p.lo;
  return dd_detail::fast_two_sum(p.hi, t);
}
inline DD operator*(DD a, double b) {
  DD p = dd_detail::two_prod(a.hi, b);
  return dd_detail::fast_two_sum(p.hi, a.lo * b + p.lo);
}
inline DD operator*(double a, DD b) { return b * a; }

inline DD operator/(DD a, DD b) {
  double q1 = a.hi / b.hi;
  DD r = a - b * q1;
  double q2 = r.hi / b.hi;
  r = r - b * q2;
  double q3 = r.hi / b.hi;
  DD q = dd_detail::fast_two_sum(q1, q2);
  return q + q3;
}
inline DD operator/(DD a, double b) { return a / DD(b); }
inline DD operator/(double a, DD b) { return DD(a) / b; }

inline bool operator<(DD a, DD b) { return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo); }
inline bool operator>(DD a, DD b) { return b < a; }

inline DD dd_abs(DD a) { return a.hi < 0.0 || (a.hi == 0.0 && a.lo < 0.0) ? -a : a; }

inline const DD dd_ln2{0.6931471805599453, 2.3190468138462996e-17};
inline const DD dd_euler_gamma{0.5772156649015329, -4.942915152430645e-18};
inline const DD dd_pi{3.141592653589793, 1.2246467991473532e-16};

// exp via argument reduction a = k ln2 + r, |r| <= ln2/2, then Taylor.
inline DD dd_exp(DD a) {
  if (a.hi > 709.0 || a.hi < -709.0) {
    return DD(std::exp(a.hi)); // saturates; callers stay in range
  }
  double k = std::round(a.hi / dd_ln2.hi);
  DD r = a - dd_ln2 * k;
  DD sum = DD(1.0) + r;
  DD term = r;
  for (int n = 2; n < 32; ++n) {
    term = term * r / static_cast<double>(n);
    sum = sum + term;
    if (std::abs(term.hi) < 1e-35 * std::abs(sum.hi)) break;
  }
  double scale = std::ldexp(1.0, static_cast<int>(k));
  return DD(sum.hi * scale, sum.lo * scale);
}

// log via one Newton step on top of the double-precision seed.
inline DD dd_log(DD a) {
  double y0 = std::log(a.hi);
  DD e = dd_exp(DD(y0));
  DD y = DD(y0) + (a - e) / e;
  return y;
}

inline DD dd_pow(DD a, DD b) { return dd_exp(b * dd_log(a)); }
inline DD dd_sqrt(DD a) {
  double y0 = std::sqrt(a.hi);
  if (y0 == 0.0) return DD(0.0);
  DD y(y0);
  return (y + a / y) * 0.5;
}

} // namespace omegalab

#endif
