#pragma once

#include <cstddef>
#include <span>

namespace weyllab {

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double max_abs_residual = 0.0;
  std::size_t points = 0;
};

/// Least squares of log(value) against log(N). Needs at least four points,
/// strictly increasing positive N and positive values.
FitResult growth_exponent_fit(std::span<const double> N, std::span<const double> values);

}  // namespace weyllab
