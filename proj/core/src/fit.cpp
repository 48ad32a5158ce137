#include "weyllab/fit.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "weyllab/error.hpp"

namespace weyllab {

FitResult growth_exponent_fit(std::span<const double> N, std::span<const double> values) {
  detail::require(N.size() == values.size(), "growth_exponent_fit: size mismatch");
  detail::require(N.size() >= 4, "growth_exponent_fit: need at least 4 points");
  for (std::size_t i = 0; i < N.size(); ++i) {
    detail::require(std::isfinite(N[i]) && N[i] > 0.0, "growth_exponent_fit: N must be positive");
    detail::require(std::isfinite(values[i]) && values[i] > 0.0,
                    "growth_exponent_fit: values must be positive");
    detail::require(i == 0 || N[i] > N[i - 1], "growth_exponent_fit: N must be strictly increasing");
  }
  const std::size_t n = N.size();
  std::vector<double> x(n), y(n);
  std::transform(N.begin(), N.end(), x.begin(), [](double v) { return std::log(v); });
  std::transform(values.begin(), values.end(), y.begin(), [](double v) { return std::log(v); });

  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  FitResult fit;
  fit.points = n;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double sse = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    sse += r * r;
    fit.max_abs_residual = std::max(fit.max_abs_residual, std::abs(r));
  }
  fit.r_squared = syy > 0.0 ? 1.0 - sse / syy : 1.0;
  return fit;
}

}  // namespace weyllab
