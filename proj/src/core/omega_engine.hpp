#ifndef OMEGALAB_CORE_OMEGA_ENGINE_HPP
#define OMEGALAB_CORE_OMEGA_ENGINE_HPP

// Omega(delta) = int_2^inf (ln x - 2) x^(-3/2-delta) (li(x) - pi(x)) dx,
// evaluated as (li-weighted integral) - (prime-weighted integral) so the
// cancellation between the two delta^-2-sized sides happens in a single
// final subtraction.  Sweeps share one streaming prime pass across all
// requested delta values.

#include <cstdint>
#include <span>
#include <vector>

#include "kernel_integrals.hpp"
#include "primes.hpp"

namespace omegalab {

struct OmegaResult {
  double delta = 0.0;
  double omega = 0.0;
  double scaled = 0.0;   // delta * omega
  double residual = 0.0; // omega - 1/delta
  double x_trunc = 0.0;
  double tail_bound = 0.0;
  double eval_err = 0.0;
};

struct SweepTable {
  std::vector<OmegaResult> rows;
  int sieve_pass_count = 0;
  double von_koch_const = kDefaultVonKoch;
};

struct MultReport {
  double product_delta = 0.0;
  OmegaResult product_row;
  double factors_product = 0.0; // prod Omega(delta_k)
  double ratio = 0.0;           // Omega(prod) / prod Omega(delta_k)
  double err_budget = 0.0;
};

struct FactorEntry {
  uint64_t p = 0;
  uint32_t alpha = 0;
  OmegaResult row; // Omega(1/p)
};

struct FactorizationReport {
  uint64_t n = 0;
  double delta = 0.0; // 1/n
  OmegaResult omega_n;
  std::vector<FactorEntry> factors;
  double product = 0.0; // prod Omega(1/p_l)^alpha_l
  double ratio = 0.0;
  double err_budget = 0.0;
};

struct OmegaConfig {
  double von_koch_const = kDefaultVonKoch;
  double eps_rel = 1e-3;           // tail target relative to the 1/delta lead
  double delta_max = 0.45;         // public omega/sweep range
  double min_product_delta = 0.02; // feasibility floor for mult/factor runs
};

class OmegaEngine {
public:
  OmegaEngine(PrimePipeline &primes, OmegaConfig cfg = {})
      : primes_(primes), cfg_(cfg) {}

  const OmegaConfig &config() const { return cfg_; }

  // x_max <= 0 requests auto truncation via required_xmax(eps_rel/delta).
  OmegaResult omega(double delta, double x_max);
  // One streaming prime pass for all deltas; rows come back sorted by
  // descending delta.
  SweepTable sweep(std::span<const double> deltas, double x_max);

  MultReport multiplicativity(std::span<const double> deltas, double x_max);
  FactorizationReport factorization_demo(uint64_t n, double x_max);

private:
  // allow_half widens the range to (0, 1/2] for factorization runs, where
  // Omega(1/2) appears whenever 2 divides n.
  void check_delta(double delta, bool allow_half) const;
  double resolve_x(double delta, double x_max) const;
  SweepTable sweep_impl(std::span<const double> deltas, double x_max,
                        bool allow_half);

  PrimePipeline &primes_;
  OmegaConfig cfg_;
};

} // namespace omegalab

#endif
