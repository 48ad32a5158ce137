#include "weyllab/signal.hpp"

#include <algorithm>
#include <cmath>

#include "weyllab/error.hpp"
#include "weyllab/summation.hpp"

namespace weyllab {

Complex SignalVector::at(std::int64_t n) const {
  if (n < offset || n >= end()) {
    return {};
  }
  return values[static_cast<std::size_t>(n - offset)];
}

SignalVector SignalVector::impulse(std::int64_t at) { return SignalVector{at, {Complex(1.0, 0.0)}}; }

double lp_norm(const SignalVector& f, double p) {
  detail::require(p >= 1.0, "lp_norm: p must be >= 1");
  if (f.values.empty()) {
    return 0.0;
  }
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& v : f.values) m = std::max(m, std::abs(v));
    return m;
  }
  std::vector<double> powers(f.size());
  std::transform(f.values.begin(), f.values.end(), powers.begin(),
                 [p](Complex v) { return p == 2.0 ? std::norm(v) : std::pow(std::abs(v), p); });
  return std::pow(pairwise_sum<double>(powers), 1.0 / p);
}

SignalVector shifted(const SignalVector& f, std::int64_t t) { return SignalVector{f.offset + t, f.values}; }

SignalVector linear_combination(Complex a, const SignalVector& f, Complex b, const SignalVector& h) {
  if (f.values.empty() && h.values.empty()) {
    return {};
  }
  const std::int64_t lo = f.values.empty() ? h.first() : h.values.empty() ? f.first() : std::min(f.first(), h.first());
  const std::int64_t hi = f.values.empty() ? h.end() : h.values.empty() ? f.end() : std::max(f.end(), h.end());
  SignalVector out{lo, std::vector<Complex>(static_cast<std::size_t>(hi - lo))};
  for (std::int64_t n = lo; n < hi; ++n) {
    out.values[static_cast<std::size_t>(n - lo)] = a * f.at(n) + b * h.at(n);
  }
  return out;
}

Complex dft(const SignalVector& f, const Frequency& theta) {
  CompensatedSum<Complex> sum;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const std::int64_t n = f.offset + static_cast<std::int64_t>(i);
    const double t = n >= 0 ? theta.turns(static_cast<std::uint64_t>(n))
                            : -theta.turns(static_cast<std::uint64_t>(-n));
    sum.add(f.values[i] * unit_phase(-t));
  }
  return sum.value();
}

double max_abs_difference(const SignalVector& f, const SignalVector& h) {
  const std::int64_t lo = std::min(f.first(), h.first());
  const std::int64_t hi = std::max(f.end(), h.end());
  double m = 0.0;
  for (std::int64_t n = lo; n < hi; ++n) m = std::max(m, std::abs(f.at(n) - h.at(n)));
  return m;
}

}  // namespace weyllab
