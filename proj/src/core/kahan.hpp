#ifndef OMEGALAB_CORE_KAHAN_HPP
#define OMEGALAB_CORE_KAHAN_HPP

#ifdef __FAST_MATH__
#error "fast math breaks compensated summation"
#endif

#include <cmath>
#include <complex>

namespace omegalab {

// Kahan-compensated accumulator.  Merging another accumulator feeds its sum
// and then its carry as two ordinary adds, so reductions stay deterministic
// for any fixed merge order.
class KahanSum {
public:
  void add(double x) {
    double y = x - carry_;
    double t = sum_ + y;
    carry_ = (t - sum_) - y;
    sum_ = t;
  }
  void merge(const KahanSum &other) {
    add(other.sum_);
    add(-other.carry_);
  }
  double value() const { return sum_ - carry_; }
  double raw_sum() const { return sum_; }
  double raw_carry() const { return carry_; }

private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

// Componentwise Kahan for complex terms.
class KahanSumComplex {
public:
  void add(std::complex<double> z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  void merge(const KahanSumComplex &other) {
    re_.merge(other.re_);
    im_.merge(other.im_);
  }
  std::complex<double> value() const { return {re_.value(), im_.value()}; }

private:
  KahanSum re_, im_;
};

} // namespace omegalab

#endif
