#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>

namespace weyllab {

/// Neumaier-compensated running sum. Order of additions is the caller's, so
/// results are reproducible for a fixed loop order.
template <typename T>
class CompensatedSum {
public:
  void add(T x) {
    const T t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  T value() const { return sum_ + carry_; }

private:
  T sum_{};
  T carry_{};
};

template <>
class CompensatedSum<std::complex<double>> {
public:
  void add(std::complex<double> x) {
    re_.add(x.real());
    im_.add(x.imag());
  }
  std::complex<double> value() const { return {re_.value(), im_.value()}; }

private:
  CompensatedSum<double> re_;
  CompensatedSum<double> im_;
};

/// Pairwise (cascade) summation with a fixed split, deterministic for a given span.
template <typename T>
T pairwise_sum(std::span<const T> xs) {
  if (xs.size() <= 16) {
    T s{};
    for (const T& x : xs) s += x;
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

}  // namespace weyllab
