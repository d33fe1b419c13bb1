#include "kernel_integrals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kahan.hpp"
#include "special_functions.hpp"

namespace omegalab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void check_x(double x) {
  if (!(x >= 2.0)) throw_domain("kernel domain starts at x = 2");
}

} // namespace

double kernel(double x, const KernelParams &params) {
  check_x(x);
  return (std::log(x) - 2.0) * std::pow(x, -params.a);
}

double kernel_antiderivative(double x, const KernelParams &params) {
  check_x(x);
  if (!(params.a > 1.0)) throw_domain("antiderivative requires a > 1");
  const double b = 1.0 - params.a; // -(1/2 + delta), always negative
  const double c = 1.0 / (b * b) + 2.0 / b;
  return std::pow(x, b) * (std::log(x) / b - c);
}

std::vector<PrimeSideResult> prime_weighted_rows(std::span<const PrimeSideRow> rows,
                                                 PrimePipeline &primes) {
  struct RowCoef {
    double b, c;
    uint64_t limit;
  };
  std::vector<RowCoef> coef;
  coef.reserve(rows.size());
  uint64_t pass_limit = 2;
  for (const PrimeSideRow &row : rows) {
    if (!(row.x_limit >= 2.0)) throw_domain("x_max must be >= 2");
    const double b = 1.0 - row.params.a;
    coef.push_back({b, 1.0 / (b * b) + 2.0 / b,
                    static_cast<uint64_t>(row.x_limit)});
    pass_limit = std::max(pass_limit, coef.back().limit);
  }

  struct RowPartial {
    KahanSum w;
    double abs_w = 0.0;
    uint64_t count = 0;
  };
  using Partial = std::vector<RowPartial>;

  Partial totals(rows.size());
  primes.for_each_segment<Partial>(
      pass_limit,
      [&](const SieveSegment &seg) {
        Partial part(coef.size());
        std::vector<uint64_t> ps;
        ps.reserve(seg.odd_count / 8 + 8);
        seg.extract(ps);
        for (uint64_t p : ps) {
          const double lp = std::log(static_cast<double>(p));
          for (size_t r = 0; r < coef.size(); ++r) {
            if (p > coef[r].limit) continue;
            const double w = std::exp(coef[r].b * lp) * (lp / coef[r].b - coef[r].c);
            part[r].w.add(w);
            part[r].abs_w += std::abs(w);
            ++part[r].count;
          }
        }
        return part;
      },
      [&](uint64_t, Partial &&part) {
        for (size_t r = 0; r < totals.size(); ++r) {
          totals[r].w.merge(part[r].w);
          totals[r].abs_w += part[r].abs_w;
          totals[r].count += part[r].count;
        }
      });

  std::vector<PrimeSideResult> out(rows.size());
  for (size_t r = 0; r < rows.size(); ++r) {
    const double w_end = kernel_antiderivative(rows[r].x_limit, rows[r].params);
    out[r].count = totals[r].count;
    out[r].abs_sum = totals[r].abs_w;
    out[r].value =
        static_cast<double>(totals[r].count) * w_end - totals[r].w.value();
  }
  return out;
}

IntegralEstimate prime_weighted_integral(double x_max,
                                         const KernelParams &params,
                                         PrimePipeline &primes) {
  const PrimeSideRow row{x_max, params};
  const PrimeSideResult r = prime_weighted_rows({&row, 1}, primes)[0];
  const double w_end = kernel_antiderivative(x_max, params);
  IntegralEstimate est;
  est.value = r.value;
  est.truncation_x = x_max;
  est.tail_bound = 0.0; // exact on [2, x_max]
  est.eval_err =
      4.0 * kEps * (r.abs_sum + std::abs(w_end) * static_cast<double>(r.count));
  return est;
}

IntegralEstimate li_weighted_integral(double x_max, const KernelParams &params) {
  if (!(x_max >= 2.0)) throw_domain("x_max must be >= 2");
  if (params.delta > 0.5) throw_domain("delta beyond 1/2 flips the Ei reduction");
  const double b = 1.0 - params.a;
  const double bp1 = b + 1.0; // 1/2 - delta, zero exactly at delta = 1/2
  const double c = 1.0 / (b * b) + 2.0 / b;
  const double lx = std::log(x_max);

  const double w_end = kernel_antiderivative(x_max, params);
  const double w_two = kernel_antiderivative(2.0, params);
  const double li_end = li(x_max);
  const double k = constant_K();

  double power_term, ei_term;
  if (bp1 == 0.0) {
    power_term = std::log(x_max / 2.0) / b;
    ei_term = std::log(lx) - std::log(std::log(2.0));
  } else {
    power_term =
        (std::pow(x_max, bp1) - std::pow(2.0, bp1)) / (b * bp1);
    ei_term = (x_max == 2.0)
                  ? 0.0
                  : exp_integral_ei(bp1 * lx) - exp_integral_ei(bp1 * std::log(2.0));
  }

  IntegralEstimate est;
  est.value = w_end * li_end - w_two * k - power_term + c * ei_term;
  est.truncation_x = x_max;
  est.tail_bound = 0.0;
  est.eval_err = 8.0 * kEps *
                 (std::abs(w_end * li_end) + std::abs(w_two * k) +
                  std::abs(power_term) + std::abs(c * ei_term));
  return est;
}

double tail_bound(double x_trunc, const KernelParams &params,
                  double von_koch_const) {
  if (!(x_trunc >= kESquared)) {
    throw_domain("tail bound requires x_trunc >= e^2 (positive kernel tail)");
  }
  if (!(params.delta > 0.0)) throw_domain("tail bound requires delta > 0");
  if (!(von_koch_const > 0.0)) throw_domain("von Koch constant must be positive");
  const double d = params.delta;
  const double u = std::log(x_trunc);
  // int_T^inf x^(-1-d) ln^2 x dx = e^(-d u) (u^2/d + 2u/d^2 + 2/d^3)
  // int_T^inf x^(-1-d) 2 ln x dx = e^(-d u) (2u/d + 2/d^2)
  const double poly =
      u * u / d + 2.0 * u / (d * d) + 2.0 / (d * d * d) + 2.0 * u / d + 2.0 / (d * d);
  return von_koch_const * std::exp(-d * u) * poly;
}

double required_xmax(const KernelParams &params, double eps_abs,
                     double von_koch_const, uint64_t cap) {
  if (!(eps_abs > 0.0)) throw_domain("eps must be positive");
  // smallest power of two at or above e^2
  for (uint64_t x = 8;; x <<= 1) {
    if (x > cap) {
      throw_infeasible(
          "tail target " + std::to_string(eps_abs) +
          " unreachable under the sieve cap; increase the cap or relax eps");
    }
    if (tail_bound(static_cast<double>(x), params, von_koch_const) <= eps_abs) {
      return static_cast<double>(x);
    }
  }
}

} // namespace omegalab
