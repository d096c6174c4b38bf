// Compensated summation for real and complex accumulators.
#pragma once

#include <cmath>
#include <complex>

namespace degeis {

// Neumaier's variant of Kahan summation; robust when a summand exceeds the
// running total in magnitude.
template <class T>
class NeumaierSum;

template <>
class NeumaierSum<double> {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0, comp_ = 0.0;
};

template <>
class NeumaierSum<std::complex<double>> {
 public:
  void add(std::complex<double> v) {
    re_.add(v.real());
    im_.add(v.imag());
  }
  std::complex<double> value() const { return {re_.value(), im_.value()}; }

 private:
  NeumaierSum<double> re_, im_;
};

template <class T>
using KahanSum = NeumaierSum<T>;

}  // namespace degeis
