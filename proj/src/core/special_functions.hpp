#ifndef OMEGALAB_CORE_SPECIAL_FUNCTIONS_HPP
#define OMEGALAB_CORE_SPECIAL_FUNCTIONS_HPP

// Exponential integral Ei, logarithmic integral li(x) = Ei(ln x), the offset
// Li(x) = li(x) - li(2), and the constant K = li(2) (the principal value of
// the integral of 1/ln t over (0,2)).

#include "dd.hpp"
#include "errors.hpp"

namespace omegalab {

struct PrecisionPolicy {
  double target_abs_err = 1e-12;
  int max_series_terms = 200;
  bool oracle_mode = false; // accumulate the Ei series in pair arithmetic

  void validate() const {
    if (!(target_abs_err > 0)) throw_domain("target_abs_err must be positive");
    if (max_series_terms < 30) throw_domain("max_series_terms must be >= 30");
  }
};

// Principal-value exponential integral.  Power series on [-1, 40],
// asymptotic expansion above, continued fraction below -1.
double exp_integral_ei(double y, const PrecisionPolicy &policy = {});

// li(x) = Ei(ln x) for x > 1 (the artifact never needs x in (0,1]).
double li(double x, const PrecisionPolicy &policy = {});

// Li(x) = li(x) - li(2); Li(2) = 0.
double li_offset(double x, const PrecisionPolicy &policy = {});

// K = li(2), the V.p. integral of dt/ln t over (0, 2); K ~ 1.04.
double constant_K();

// Pair-arithmetic Ei power series (|y| <= 40, y != 0); backs oracle_mode and
// the cross-checks in the test suite.
DD ei_series_dd(DD y, int max_terms = 400);

inline constexpr double kEiSeriesCut = 40.0;   // series/asymptotic switch
inline constexpr double kEiOverflow = 709.0;   // exp(y) overflows above

} // namespace omegalab

#endif
