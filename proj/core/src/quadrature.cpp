#include "weyllab/quadrature.hpp"

#include <cmath>

#include <boost/math/quadrature/gauss.hpp>

#include "weyllab/error.hpp"
#include "weyllab/summation.hpp"

namespace weyllab {

namespace {

using Rule = boost::math::quadrature::gauss<double, 16>;

// Boost stores the nonnegative half of the symmetric node set.
template <typename T, typename F>
T panel_sum(const F& f, double a, double b, std::size_t panels) {
  detail::require(panels >= 1, "gauss_legendre_panels: need at least one panel");
  const auto& x = Rule::abscissa();
  const auto& w = Rule::weights();
  const double h = (b - a) / static_cast<double>(panels);
  CompensatedSum<T> total;
  for (std::size_t p = 0; p < panels; ++p) {
    const double lo = a + h * static_cast<double>(p);
    const double mid = lo + 0.5 * h;
    const double half = 0.5 * h;
    T s{};
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == 0.0) {
        s += w[i] * f(mid);
      } else {
        s += w[i] * (f(mid - half * x[i]) + f(mid + half * x[i]));
      }
    }
    total.add(s * half);
  }
  return total.value();
}

}  // namespace

std::complex<double> gauss_legendre_panels(const std::function<std::complex<double>(double)>& f,
                                           double a, double b, std::size_t panels) {
  return panel_sum<std::complex<double>>(f, a, b, panels);
}

double gauss_legendre_panels_real(const std::function<double(double)>& f, double a, double b,
                             std::size_t panels) {
  return panel_sum<double>(f, a, b, panels);
}

double gamma_kernel_integral(double c, double a, double step) {
  detail::require(c > 0 && a > 0, "gamma_kernel_integral: c and a must be positive");
  // Integrand in x: exp(a x - c e^x). Peak at x0 = log(a / c).
  const double x0 = std::log(a / c);
  const double peak = a * x0 - a;  // log of the integrand at x0
  // Left tail decays like e^{a x}; right tail like exp(-c e^x).
  const double lo = x0 - (40.0 + 1.0) / a;
  double hi = x0 + 1.0;
  while (a * hi - c * std::exp(hi) > peak - 45.0) hi += 1.0;
  CompensatedSum<double> sum;
  const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / step));
  for (std::size_t i = 0; i <= n; ++i) {
    const double x = lo + step * static_cast<double>(i);
    const double log_term = a * x - c * std::exp(x);
    sum.add(std::exp(log_term));
  }
  return sum.value() * step;
}

}  // namespace weyllab
