#include "oracles.hpp"

#include <cmath>

namespace omegalab::test {

bool is_prime_trial(uint64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0 || n % 3 == 0) return false;
  for (uint64_t f = 5; f * f <= n; f += 6) {
    if (n % f == 0 || n % (f + 2) == 0) return false;
  }
  return true;
}

uint64_t pi_trial(uint64_t x) {
  uint64_t count = 0;
  for (uint64_t n = 2; n <= x; ++n) {
    if (is_prime_trial(n)) ++count;
  }
  return count;
}

std::vector<uint64_t> primes_trial(uint64_t lo, uint64_t hi) {
  std::vector<uint64_t> out;
  for (uint64_t n = lo; n < hi; ++n) {
    if (is_prime_trial(n)) out.push_back(n);
  }
  return out;
}

namespace {

DD simpson_panel(double a, double b, DD fa, DD fm, DD fb) {
  return (fa + 4.0 * fm + fb) * ((b - a) / 6.0);
}

DD simpson_rec(const std::function<DD(double)> &f, double a, double b, DD fa,
               DD fm, DD fb, DD whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const DD flm = f(lm);
  const DD frm = f(rm);
  const DD left = simpson_panel(a, m, fa, flm, fm);
  const DD right = simpson_panel(m, b, fm, frm, fb);
  const DD sum = left + right;
  const DD delta = sum - whole;
  if (depth <= 0 || std::abs(delta.hi) <= 15.0 * tol) {
    return sum + delta / 15.0;
  }
  return simpson_rec(f, a, m, fa, flm, fm, left, tol * 0.5, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, tol * 0.5, depth - 1);
}

} // namespace

DD simpson_dd(const std::function<DD(double)> &f, double a, double b,
              double abs_tol, int max_depth) {
  if (a == b) return DD(0.0);
  const double m = 0.5 * (a + b);
  const DD fa = f(a);
  const DD fm = f(m);
  const DD fb = f(b);
  const DD whole = simpson_panel(a, b, fa, fm, fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, abs_tol, max_depth);
}

DD ei_quadrature_oracle(double y) {
  // (e^t - 1)/t is entire with value 1 at t = 0
  auto integrand = [](double t) -> DD {
    if (t == 0.0) return DD(1.0);
    return (dd_exp(DD(t)) - 1.0) / DD(t);
  };
  // tolerance scaled to the integrand magnitude e^y/y for positive y
  const double scale =
      y > 1.0 ? std::exp(std::min(y, 700.0)) / y : std::max(1.0, std::abs(y));
  const DD body = simpson_dd(integrand, 0.0, y, 1e-16 * scale);
  return dd_euler_gamma + dd_log(dd_abs(DD(y))) + body;
}

DD li_pv_oracle(double x) {
  // paired contributions of t = 1-u and t = 1+u; finite at both ends
  auto paired = [](double u) -> DD {
    if (u == 0.0) return DD(1.0);
    if (u == 1.0) return 1.0 / dd_ln2;
    if (u < 1e-8) return DD(1.0); // 1 + O(u^2), below the tolerance
    return 1.0 / dd_log(DD(1.0) + DD(u)) + 1.0 / dd_log(DD(1.0) - DD(u));
  };
  DD total = simpson_dd(paired, 0.0, 1.0, 1e-16);
  if (x > 2.0) {
    total = total + simpson_dd([](double t) { return 1.0 / dd_log(DD(t)); },
                               2.0, x, 1e-12);
  }
  return total;
}

std::complex<long double> zeta_oracle(std::complex<long double> s, int n,
                                      int m) {
  using C = std::complex<long double>;
  static const long double bern[] = {
      1.0L / 6, -1.0L / 30, 1.0L / 42, -1.0L / 30, 5.0L / 66, -691.0L / 2730,
      7.0L / 6, -3617.0L / 510, 43867.0L / 798, -174611.0L / 330,
      854513.0L / 138, -236364091.0L / 2730,
  };
  const long double nn = static_cast<long double>(n);
  C sum(0.0L, 0.0L);
  for (int k = n - 1; k >= 1; --k) { // reverse order: different path on purpose
    sum += std::exp(-s * std::log(static_cast<long double>(k)));
  }
  const C npow = std::exp(-s * std::log(nn));
  C total = sum + npow * 0.5L + npow * nn / (s - 1.0L);
  C poly = s;
  long double fact = 2.0L; // (2k)!
  long double npow2 = nn;  // N^(2k-1)
  for (int k = 1; k <= m; ++k) {
    total += bern[k - 1] / fact * poly * npow / npow2;
    poly *= (s + static_cast<long double>(2 * k - 1)) *
            (s + static_cast<long double>(2 * k));
    fact *= (2.0L * k + 1.0L) * (2.0L * k + 2.0L);
    npow2 *= nn * nn;
  }
  return total;
}

} // namespace omegalab::test
