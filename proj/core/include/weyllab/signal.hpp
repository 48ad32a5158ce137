#pragma once

#include <cstdint>
#include <vector>

#include "weyllab/frequency.hpp"

namespace weyllab {

/// Finitely supported sequence on Z: values[i] sits at n = offset + i.
struct SignalVector {
  std::int64_t offset = 0;
  std::vector<Complex> values;

  std::size_t size() const { return values.size(); }
  std::int64_t first() const { return offset; }
  std::int64_t end() const { return offset + static_cast<std::int64_t>(values.size()); }
  /// f(n), zero outside the stored range.
  Complex at(std::int64_t n) const;

  static SignalVector impulse(std::int64_t at);
};

/// (sum |f(n)|^p)^{1/p} with pairwise summation; p = infinity gives the max norm.
double lp_norm(const SignalVector& f, double p);

/// n -> f(n - t).
SignalVector shifted(const SignalVector& f, std::int64_t t);

/// a f + b h on the union of the two supports.
SignalVector linear_combination(Complex a, const SignalVector& f, Complex b, const SignalVector& h);

/// sum_n f(n) e^{-2 pi i n theta}, phases reduced exactly.
Complex dft(const SignalVector& f, const Frequency& theta);

/// Largest |f(n) - h(n)| over the union of supports.
double max_abs_difference(const SignalVector& f, const SignalVector& h);

}  // namespace weyllab
