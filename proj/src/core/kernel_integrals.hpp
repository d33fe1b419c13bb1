#ifndef OMEGALAB_CORE_KERNEL_INTEGRALS_HPP
#define OMEGALAB_CORE_KERNEL_INTEGRALS_HPP

// The weight kernel (ln x - 2) x^(-3/2-delta), its closed-form
// antiderivative, the reduction of int kernel*pi(x) dx to prime sums, the
// smooth li-weighted companion integral, and the conditional tail bound
// |P(x)| <= C sqrt(x) ln x integrated past the truncation point.

#include <cstdint>
#include <span>
#include <vector>

#include "errors.hpp"
#include "primes.hpp"

namespace omegalab {

// Schoenfeld's explicit constant for the conditional bound
// |pi(x) - li(x)| <= sqrt(x) ln x / (8 pi), x >= 2657.
inline constexpr double kDefaultVonKoch = 0.039788735772973834;

inline constexpr double kESquared = 7.38905609893065;

struct KernelParams {
  double delta; // in (0, 1/2]; the engine's sweep surface restricts further
  double a;     // 3/2 + delta

  static KernelParams make(double delta) {
    if (!(delta > 0.0) || delta > 0.5) {
      throw_domain("delta must lie in (0, 1/2]");
    }
    return {delta, 1.5 + delta};
  }
};

struct IntegralEstimate {
  double value = 0.0;
  double truncation_x = 0.0;
  double tail_bound = 0.0; // RH-conditional bound on the discarded tail
  double eval_err = 0.0;   // series/rounding budget
  double total_uncertainty() const { return tail_bound + eval_err; }
};

// (ln x - 2) x^(-a); negative on [2, e^2), zero at e^2, positive beyond.
double kernel(double x, const KernelParams &params);

// W with W' = kernel and W(+inf) = 0, assembled from the exact power/log
// antiderivatives.
double kernel_antiderivative(double x, const KernelParams &params);

// One row of a (possibly multi-delta) prime-weighted pass.
struct PrimeSideRow {
  double x_limit;
  KernelParams params;
};
struct PrimeSideResult {
  double value = 0.0;   // pi(X) W(X) - sum_p W(p)
  double abs_sum = 0.0; // sum |W(p)| for the rounding budget
  uint64_t count = 0;   // pi(X)
};

// Evaluates every row in a single streaming pass over the primes
// (per-segment compensated partials, merged in segment order, so results do
// not depend on the thread count).
std::vector<PrimeSideResult> prime_weighted_rows(std::span<const PrimeSideRow> rows,
                                                 PrimePipeline &primes);

// sum_{p <= x_max} (W(x_max) - W(p)) = int_2^xmax kernel * pi dx, computed
// as pi(X) W(X) minus a compensated sum of W(p) (one subtraction at the end).
IntegralEstimate prime_weighted_integral(double x_max,
                                         const KernelParams &params,
                                         PrimePipeline &primes);

// int_2^xmax kernel * li dx by parts: [W li] minus power terms minus an
// Ei((1/2-delta) ln x) term; exactly delta = 1/2 degenerates to ln ln x.
IntegralEstimate li_weighted_integral(double x_max, const KernelParams &params);

// von_koch_const * int_xmax^inf x^(-1-delta) (ln^2 x + 2 ln x) dx in closed
// form; an upper bound for the truncation error of the omega integral under
// the conditional |P| bound.
double tail_bound(double x_trunc, const KernelParams &params,
                  double von_koch_const);

// Smallest power-of-two X >= e^2 with tail_bound(X) <= eps_abs; throws
// ErrorCode::infeasible when no admissible X fits under cap.
double required_xmax(const KernelParams &params, double eps_abs,
                     double von_koch_const, uint64_t cap);

} // namespace omegalab

#endif
