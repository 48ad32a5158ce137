#pragma once

#include <string>

#include "weyllab/exact.hpp"

namespace weyllab {

/// Locale-independent "%.15g"; "inf", "-inf" and "nan" for non-finite values.
std::string format_double(double x);

/// x rounded to 15 significant digits (the value format_double prints).
double round15(double x);

std::string to_string(const BigInt& x);
/// "a/b", or "a" for integers.
std::string to_string(const Rational& x);

}  // namespace weyllab
