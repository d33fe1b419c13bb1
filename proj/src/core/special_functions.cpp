#include "special_functions.hpp"

#include <cmath>
#include <limits>

#include "kahan.hpp"

namespace omegalab {

namespace {

constexpr double kEulerGamma = 0.5772156649015328606;

// Ei(y) = gamma + ln|y| + sum_{n>=1} y^n / (n n!)
double ei_series(double y, const PrecisionPolicy &policy) {
  KahanSum acc;
  double u = 1.0; // y^n / n!
  for (int n = 1; n <= policy.max_series_terms; ++n) {
    u *= y / n;
    const double term = u / n;
    acc.add(term);
    if (std::abs(term) < 0.25 * std::numeric_limits<double>::epsilon() *
                             (std::abs(acc.value()) + 1.0)) {
      break;
    }
  }
  return kEulerGamma + std::log(std::abs(y)) + acc.value();
}

// Ei(y) ~ e^y / y * sum_k k! / y^k for large y, truncated at the smallest term.
double ei_asymptotic(double y) {
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 80; ++k) {
    const double next = term * k / y;
    if (std::abs(next) >= std::abs(term)) break; // divergent tail reached
    term = next;
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return std::exp(y) / y * sum;
}

// E1(z) for z >= 1 by the modified-Lentz continued fraction
//   E1(z) = e^-z / (z + 1 - 1/(z + 3 - 4/(z + 5 - 9/(...))))
double e1_continued_fraction(double z) {
  const double tiny = 1e-300;
  double b = z + 1.0;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 200; ++i) {
    const double a = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const double delta = c * d;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-17) break;
  }
  return std::exp(-z) * h;
}

} // namespace

double exp_integral_ei(double y, const PrecisionPolicy &policy) {
  policy.validate();
  if (y == 0.0) throw_domain("Ei has a logarithmic pole at y = 0");
  if (y > kEiOverflow) throw_domain("Ei overflows binary64 beyond y ~ 709");
  if (y > kEiSeriesCut) return ei_asymptotic(y);
  if (y < -1.0) return -e1_continued_fraction(-y);
  if (policy.oracle_mode) return ei_series_dd(DD(y)).to_double();
  return ei_series(y, policy);
}

double li(double x, const PrecisionPolicy &policy) {
  if (!(x > 1.0)) throw_domain("li requires x > 1");
  return exp_integral_ei(std::log(x), policy);
}

double li_offset(double x, const PrecisionPolicy &policy) {
  return li(x, policy) - constant_K();
}

double constant_K() {
  static const double k = li(2.0);
  return k;
}

DD ei_series_dd(DD y, int max_terms) {
  if (y.hi == 0.0) throw_domain("Ei has a logarithmic pole at y = 0");
  DD acc(0.0);
  DD u(1.0);
  for (int n = 1; n <= max_terms; ++n) {
    u = u * y / static_cast<double>(n);
    const DD term = u / static_cast<double>(n);
    acc = acc + term;
    if (std::abs(term.hi) < 1e-36 * (std::abs(acc.hi) + 1.0)) break;
  }
  return dd_euler_gamma + dd_log(dd_abs(y)) + acc;
}

} // namespace omegalab
