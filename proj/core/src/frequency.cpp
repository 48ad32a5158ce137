#include "weyllab/frequency.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include <boost/multiprecision/cpp_int.hpp>

#include "weyllab/error.hpp"

namespace weyllab {

namespace {

using u128 = unsigned __int128;

struct Dyadic {
  std::uint64_t mantissa = 0;  // odd (or zero)
  int shift = 0;               // value = mantissa * 2^-shift
  bool negative = false;
};

Dyadic decompose(double x) {
  Dyadic d;
  if (x == 0.0) return d;
  d.negative = x < 0;
  int exp = 0;
  const double m = std::frexp(std::fabs(x), &exp);
  d.mantissa = static_cast<std::uint64_t>(std::ldexp(m, 53));
  d.shift = 53 - exp;
  while (d.mantissa != 0 && (d.mantissa & 1) == 0 && d.shift > 0) {
    d.mantissa >>= 1;
    --d.shift;
  }
  return d;
}

// frac((n^k) * mantissa * 2^-shift) for shift > 0, before applying the sign.
double positive_dyadic_turns(std::uint64_t n, int k, const Dyadic& d) {
  if (d.shift <= 128) {
    u128 power = 1;
    for (int i = 0; i < k; ++i) power *= n;  // wraps mod 2^128, exact for the residue we need
    u128 r = power * d.mantissa;
    if (d.shift < 128) r &= (static_cast<u128>(1) << d.shift) - 1;
    // r / 2^shift: align to the top of 128 bits and keep 64 leading bits.
    const u128 aligned = d.shift < 128 ? r << (128 - d.shift) : r;
    const auto hi = static_cast<std::uint64_t>(aligned >> 64);
    return std::ldexp(static_cast<long double>(hi), -64);
  }
  using boost::multiprecision::cpp_int;
  cpp_int power = 1;
  for (int i = 0; i < k; ++i) power *= n;
  cpp_int r = power * d.mantissa;
  const cpp_int modulus = cpp_int(1) << d.shift;
  r %= modulus;
  // Keep 64 leading bits of the fraction.
  const cpp_int top = (r << 64) >> d.shift;
  return std::ldexp(static_cast<long double>(top.convert_to<std::uint64_t>()), -64);
}

double wrap(double t) {
  t -= std::floor(t);
  return t >= 1.0 ? 0.0 : t;
}

}  // namespace

ReducedFraction::ReducedFraction(std::uint64_t a, std::uint64_t q) : a_(a), q_(q) {
  if (q == 0 || a == 0 || a > q || std::gcd(a, q) != 1) {
    throw InvalidArgument("ReducedFraction requires 1 <= a <= q with gcd(a, q) = 1");
  }
}

ReducedFraction ReducedFraction::normalized(std::uint64_t a, std::uint64_t q) {
  detail::require(q >= 1, "ReducedFraction::normalized: q must be >= 1");
  a %= q;
  if (a == 0) return ReducedFraction(1, 1);
  const std::uint64_t g = std::gcd(a, q);
  return ReducedFraction(a / g, q / g);
}

Frequency Frequency::rational(std::uint64_t a, std::uint64_t q) {
  detail::require(q >= 1, "Frequency::rational: q must be >= 1");
  a %= q;
  const std::uint64_t g = std::gcd(a, q);
  return a == 0 ? Frequency(0, 1, 0.0) : Frequency(a / g, q / g, 0.0);
}

double Frequency::value() const {
  return static_cast<double>(a_) / static_cast<double>(q_) + offset_;
}

std::uint64_t pow_mod(std::uint64_t x, std::uint64_t e, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t r = 1;
  x %= m;
  while (e) {
    if (e & 1) r = static_cast<std::uint64_t>(static_cast<u128>(r) * x % m);
    x = static_cast<std::uint64_t>(static_cast<u128>(x) * x % m);
    e >>= 1;
  }
  return r;
}

double dyadic_power_turns(std::uint64_t n, int k, double offset) {
  const Dyadic d = decompose(offset);
  if (d.mantissa == 0 || d.shift <= 0) return 0.0;
  const double t = positive_dyadic_turns(n, k, d);
  if (!d.negative || t == 0.0) return t;
  return 1.0 - t;
}

double Frequency::power_turns(std::uint64_t n, int k) const {
  double t = 0.0;
  if (a_ != 0) {
    const std::uint64_t residue = pow_mod(n, static_cast<std::uint64_t>(k), q_);
    const auto num = static_cast<std::uint64_t>(static_cast<u128>(residue) * a_ % q_);
    t = static_cast<double>(num) / static_cast<double>(q_);
  }
  if (offset_ != 0.0) t += dyadic_power_turns(n, k, offset_);
  return wrap(t);
}

double Frequency::turns(std::uint64_t x) const { return power_turns(x, 1); }

Complex unit_phase(double turns) {
  // Reduce to [-1/2, 1/2] so the trigonometric argument stays small.
  const double t = turns - std::round(turns);
  const double angle = 2.0 * std::numbers::pi * t;
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace weyllab
