#include "omega_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace omegalab {

void OmegaEngine::check_delta(double delta, bool allow_half) const {
  const double hi = allow_half ? 0.5 : cfg_.delta_max;
  if (!(delta > 0.0) || delta > hi) {
    throw_domain("delta must lie in (0, " + std::to_string(hi) + "]");
  }
}

double OmegaEngine::resolve_x(double delta, double x_max) const {
  if (x_max > 0.0) {
    if (!(x_max >= kESquared)) throw_domain("x_max must be >= e^2");
    if (x_max > static_cast<double>(primes_.config().x_max_cap)) {
      throw_domain("x_max exceeds the configured sieve cap");
    }
    return x_max;
  }
  const double eps_abs = cfg_.eps_rel / delta;
  return required_xmax(KernelParams::make(delta), eps_abs, cfg_.von_koch_const,
                       primes_.config().x_max_cap);
}

SweepTable OmegaEngine::sweep_impl(std::span<const double> deltas, double x_max,
                                   bool allow_half) {
  if (deltas.empty()) throw_domain("sweep needs at least one delta");
  std::vector<PrimeSideRow> rows;
  rows.reserve(deltas.size());
  for (double d : deltas) {
    check_delta(d, allow_half);
    rows.push_back({resolve_x(d, x_max), KernelParams::make(d)});
  }

  const std::vector<PrimeSideResult> prime_side = prime_weighted_rows(rows, primes_);

  SweepTable table;
  table.sieve_pass_count = 1;
  table.von_koch_const = cfg_.von_koch_const;
  table.rows.reserve(deltas.size());
  for (size_t r = 0; r < deltas.size(); ++r) {
    const KernelParams &params = rows[r].params;
    const double x_r = rows[r].x_limit;
    const IntegralEstimate li_side = li_weighted_integral(x_r, params);
    const double w_end = kernel_antiderivative(x_r, params);

    OmegaResult row;
    row.delta = deltas[r];
    row.omega = li_side.value - prime_side[r].value;
    row.scaled = row.delta * row.omega;
    row.residual = row.omega - 1.0 / row.delta;
    row.x_trunc = x_r;
    row.tail_bound = tail_bound(std::max(x_r, kESquared), params,
                                cfg_.von_koch_const);
    row.eval_err =
        li_side.eval_err +
        4.0 * std::numeric_limits<double>::epsilon() *
            (prime_side[r].abs_sum +
             std::abs(w_end) * static_cast<double>(prime_side[r].count));
    table.rows.push_back(row);
  }
  return table;
}

OmegaResult OmegaEngine::omega(double delta, double x_max) {
  const double d = delta;
  return sweep_impl({&d, 1}, x_max, false).rows[0];
}

SweepTable OmegaEngine::sweep(std::span<const double> deltas, double x_max) {
  SweepTable table = sweep_impl(deltas, x_max, false);
  std::stable_sort(table.rows.begin(), table.rows.end(),
                   [](const OmegaResult &a, const OmegaResult &b) {
                     return a.delta > b.delta;
                   });
  return table;
}

MultReport OmegaEngine::multiplicativity(std::span<const double> deltas,
                                         double x_max) {
  if (deltas.empty()) throw_domain("mult needs at least one delta");
  double product = 1.0;
  for (double d : deltas) {
    check_delta(d, false);
    product *= d;
  }
  if (product < cfg_.min_product_delta) {
    throw_infeasible("product delta " + std::to_string(product) +
                     " is below the feasibility floor " +
                     std::to_string(cfg_.min_product_delta));
  }

  std::vector<double> all;
  all.reserve(deltas.size() + 1);
  all.push_back(product);
  all.insert(all.end(), deltas.begin(), deltas.end());
  SweepTable table = sweep_impl(all, x_max, false);

  MultReport rep;
  rep.product_delta = product;
  rep.product_row = table.rows[0];
  rep.factors_product = 1.0;
  double rel_budget =
      (rep.product_row.tail_bound + rep.product_row.eval_err) /
      std::abs(rep.product_row.omega);
  for (size_t i = 1; i < table.rows.size(); ++i) {
    const OmegaResult &row = table.rows[i];
    rep.factors_product *= row.omega;
    rel_budget += (row.tail_bound + row.eval_err) / std::abs(row.omega);
  }
  rep.ratio = rep.product_row.omega / rep.factors_product;
  rep.err_budget = std::abs(rep.ratio) * rel_budget;
  return rep;
}

FactorizationReport OmegaEngine::factorization_demo(uint64_t n, double x_max) {
  if (n < 2) throw_domain("factorization demo needs n >= 2");
  const double delta_n = 1.0 / static_cast<double>(n);
  if (delta_n < cfg_.min_product_delta) {
    throw_infeasible("1/n is below the feasibility floor; pick a smaller n");
  }

  FactorizationReport rep;
  rep.n = n;
  rep.delta = delta_n;

  uint64_t m = n;
  for (uint64_t p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      uint32_t alpha = 0;
      while (m % p == 0) {
        m /= p;
        ++alpha;
      }
      rep.factors.push_back({p, alpha, {}});
    }
  }
  if (m > 1) rep.factors.push_back({m, 1, {}});

  std::vector<double> all;
  all.push_back(delta_n);
  for (const FactorEntry &f : rep.factors) {
    all.push_back(1.0 / static_cast<double>(f.p));
  }
  SweepTable table = sweep_impl(all, x_max, /*allow_half=*/true);

  rep.omega_n = table.rows[0];
  rep.product = 1.0;
  double rel_budget = (rep.omega_n.tail_bound + rep.omega_n.eval_err) /
                      std::abs(rep.omega_n.omega);
  for (size_t i = 0; i < rep.factors.size(); ++i) {
    rep.factors[i].row = table.rows[i + 1];
    const OmegaResult &row = rep.factors[i].row;
    rep.product *= std::pow(row.omega, rep.factors[i].alpha);
    rel_budget += rep.factors[i].alpha * (row.tail_bound + row.eval_err) /
                  std::abs(row.omega);
  }
  rep.ratio = rep.omega_n.omega / rep.product;
  rep.err_budget = std::abs(rep.ratio) * rel_budget;
  return rep;
}

} // namespace omegalab
