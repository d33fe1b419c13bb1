#ifndef OMEGALAB_CORE_ZETA_IDENTITIES_HPP
#define OMEGALAB_CORE_ZETA_IDENTITIES_HPP

// Numerical checks of the supporting identities: the prime-integral
// representation of ln zeta(s), its s-derivative written through the
// F(x;s)/G(s) series, cancellation of the singular parts near s = 1, the
// pole removal at s = 1/2, and the reduction of F to its leading term.

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "primes.hpp"

namespace omegalab {

using Complex = std::complex<double>;

struct ComplexPoint {
  double sigma = 0.0;
  double t = 0.0;
  Complex value() const { return {sigma, t}; }
};

struct SeriesTruncation {
  int n_terms = 0;
  double remainder_bound = 0.0; // geometric-tail majorant, ratio <= 2^-sigma
};

// zeta(s) by Euler-Maclaurin summation; terms >= 10 direct terms, remainder
// < 1e-12 for sigma >= 1/2, |t| <= 10 at terms = 64.
Complex zeta_em(Complex s, int terms = 64);
// zeta'(s) by term-wise differentiation of the same formula (stable near
// s = 1, where differencing zeta would lose the pole structure).
Complex zeta_em_derivative(Complex s, int terms = 64);
Complex zeta_log_derivative(Complex s, int terms = 64); // zeta'/zeta

// pi(X) ln(1 - X^-s) - sum_{p<=X} ln(1 - p^-s); equals the integral of
// d/dx{ln(1-x^-s)} pi(x) over [2, X] exactly (step-function integration).
// Serial compensated accumulation: bit-identical for any segment size or
// thread count.
Complex log_zeta_prime_sum(Complex s, double x_max, PrimePipeline &primes);

struct CheckReport {
  std::string check_name;
  Complex lhs;
  Complex rhs;
  double residual = 0.0;
  double bound_used = 0.0; // truncation-tail + quadrature estimate
  bool pass = false;
  std::string note;
};

// Both sides of the prime-integral identity for ln zeta(s), truncated at
// x_max, with conditional tail estimates folded into bound_used.
CheckReport log_zeta_identity_check(Complex s, double x_max, PrimePipeline &primes);

// F(x;s) = sum_{n>=0} {s(n+1) ln x - 1} x^(-(n+1)s-1), partial sum.
Complex F_series(double x, Complex s, int n_terms,
                 SeriesTruncation *trunc = nullptr);
// G(s) = sum_{n>=0} 1/((n+1)s-1) 2^(-((n+1)s-1)), partial sum; throws a
// domain error when a summed term hits the pole (n+1)s = 1.
Complex G_series(Complex s, int n_terms, SeriesTruncation *trunc = nullptr);

struct SingularRow {
  double eps = 0.0;
  double g2_value = 0.0, g2_error = 0.0; // vs -ln 2 at s = 1 + eps
  double zeta_ratio_value = 0.0,         // zeta'/zeta(1+eps) + 1/eps
      zeta_ratio_error = 0.0;            // vs Euler-Mascheroni gamma
  // second-term variants at s = 1/2 + eps: exponent 2s-1 (display) vs s-1
  // (the expansion's manipulation); only one of them stays bounded.
  double halfpole_display_value = 0.0, halfpole_display_error = 0.0;
  double halfpole_expansion_value = 0.0, halfpole_expansion_error = 0.0;
};

std::vector<SingularRow> singular_cancellation_check(std::span<const double> eps_grid);

// int_2^X F(x;sigma) P(x) dx + 1/(2 sigma - 1) with P = pi - li, computed
// through the same pi/li split as the omega engine.  f_terms = 0 uses the
// closed form -ln x/(x^sigma - 1) of the F antiderivative; f_terms > 0
// truncates the series after that many terms.
double half_pole_residual(double sigma, double x_max, int f_terms,
                       PrimePipeline &primes);

struct LeadingTermResult {
  double correction = 0.0; // int [F - (sigma ln x - 1) x^(-sigma-1)] P dx
  double pi_side = 0.0;
  double li_side = 0.0;
  double log_moment = 0.0; // (sigma-1/2) int ln x * x^(-1-sigma) P dx
};

LeadingTermResult leading_term_reduction(double sigma, double x_max,
                                         PrimePipeline &primes);

} // namespace omegalab

#endif
