#pragma once

#include <complex>
#include <cstddef>
#include <functional>

namespace weyllab {

/// Composite 16-point Gauss-Legendre rule on `panels` equal panels of [a, b].
std::complex<double> gauss_legendre_panels(const std::function<std::complex<double>(double)>& f,
                                           double a, double b, std::size_t panels);
double gauss_legendre_panels_real(const std::function<double(double)>& f, double a, double b,
                             std::size_t panels);

/// int_0^inf e^{-c y} y^{a-1} dy by the substitution y = e^x and the trapezoidal
/// rule on x. The transformed integrand is analytic in a strip and decays
/// exponentially at both ends, so the trapezoidal rule converges geometrically.
double gamma_kernel_integral(double c, double a, double step = 1.0 / 32.0);

}  // namespace weyllab
