#ifndef OMEGALAB_CORE_QUADRATURE_HPP
#define OMEGALAB_CORE_QUADRATURE_HPP

// Adaptive Gauss-Kronrod 7/15 panels with a stack of subintervals.
// Value type may be double or std::complex<double>; the error metric is the
// magnitude of the G7-K15 difference.

#include <cmath>
#include <complex>
#include <vector>

#include "errors.hpp"

namespace omegalab {

namespace quad_detail {
// K15 nodes (positive half) and weights; G7 weights on the shared nodes.
inline constexpr double kNodes[8] = {
    0.0,
    0.2077849550078985,
    0.4058451513773972,
    0.5860872354676911,
    0.7415311855993945,
    0.8648644233597691,
    0.9491079123427585,
    0.9914553711208126,
};
inline constexpr double kWeightK[8] = {
    0.2094821410847278,
    0.2044329400752989,
    0.1903505780647854,
    0.1690047266392679,
    0.1406532597155259,
    0.1047900103222502,
    0.0630920926299786,
    0.0229353220105292,
};
inline constexpr double kWeightG[8] = {
    0.4179591836734694, 0.0, 0.3818300505051189, 0.0,
    0.2797053914892767, 0.0, 0.1294849661688697, 0.0,
};

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(std::complex<double> v) { return std::abs(v); }
} // namespace quad_detail

template <typename T, typename F>
T gk15_panel(F &&f, double a, double b, double &err) {
  using namespace quad_detail;
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  T f0 = f(mid);
  T k15 = kWeightK[0] * f0;
  T g7 = kWeightG[0] * f0;
  for (int i = 1; i < 8; ++i) {
    double dx = half * kNodes[i];
    T fi = f(mid + dx) + f(mid - dx);
    k15 += kWeightK[i] * fi;
    if (kWeightG[i] != 0.0) g7 += kWeightG[i] * fi;
  }
  k15 *= half;
  g7 *= half;
  double diff = magnitude(k15 - g7);
  err = std::pow(200.0 * diff, 1.5);
  if (!std::isfinite(err)) err = diff;
  return k15;
}

struct QuadResult {
  double err = 0.0;     // accumulated panel error estimate
  int panels = 0;
};

// Integrates f over [a, b] to abs_tol or rel_tol, whichever is laxer.
template <typename T, typename F>
T integrate_adaptive(F &&f, double a, double b, double abs_tol, double rel_tol,
                     QuadResult *diag = nullptr, int max_panels = 4000) {
  if (a == b) {
    if (diag) *diag = {};
    return T{};
  }
  struct Interval {
    double a, b, err;
    T val;
  };
  std::vector<Interval> stack;
  double e0;
  T v0 = gk15_panel<T>(f, a, b, e0);
  stack.push_back({a, b, e0, v0});
  T accepted{};
  double accepted_err = 0.0;
  int used = 1;
  // crude global scale for the relative criterion
  double scale = quad_detail::magnitude(v0);
  while (!stack.empty()) {
    Interval iv = stack.back();
    stack.pop_back();
    double local_tol =
        std::max(abs_tol * std::abs(iv.b - iv.a) / std::abs(b - a),
                 rel_tol * scale * std::abs(iv.b - iv.a) / std::abs(b - a));
    if (iv.err <= local_tol || used >= max_panels ||
        std::abs(iv.b - iv.a) < 1e-14 * (std::abs(iv.a) + 1.0)) {
      accepted += iv.val;
      accepted_err += iv.err;
      continue;
    }
    double mid = 0.5 * (iv.a + iv.b);
    double e1, e2;
    T v1 = gk15_panel<T>(f, iv.a, mid, e1);
    T v2 = gk15_panel<T>(f, mid, iv.b, e2);
    used += 2;
    stack.push_back({iv.a, mid, e1, v1});
    stack.push_back({mid, iv.b, e2, v2});
    scale = std::max(scale, quad_detail::magnitude(accepted));
  }
  if (diag) {
    diag->err = accepted_err;
    diag->panels = used;
  }
  return accepted;
}

} // namespace omegalab

#endif
