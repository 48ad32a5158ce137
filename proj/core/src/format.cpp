#include "weyllab/format.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace weyllab {

// Printing never goes through iostreams, so the global locale cannot change the decimal point
// except via LC_NUMERIC, which the process never sets.
std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

double round15(double x) {
  if (!std::isfinite(x)) return x;
  return std::strtod(format_double(x).c_str(), nullptr);
}

std::string to_string(const BigInt& x) { return x.str(); }

std::string to_string(const Rational& x) {
  const BigInt num = boost::multiprecision::numerator(x);
  const BigInt den = boost::multiprecision::denominator(x);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace weyllab
