#pragma once

#include <complex>
#include <cstdint>

namespace weyllab {

using Complex = std::complex<double>;

/// Coprime a/q with 1 <= a <= q. The class of 0 mod 1 is represented as 1/1.
class ReducedFraction {
public:
  /// Throws InvalidArgument unless 1 <= a <= q and gcd(a, q) = 1.
  ReducedFraction(std::uint64_t a, std::uint64_t q);

  /// Reduces a/q and maps it into (0, 1]; a == 0 or a == q gives 1/1.
  static ReducedFraction normalized(std::uint64_t a, std::uint64_t q);

  std::uint64_t a() const { return a_; }
  std::uint64_t q() const { return q_; }
  double value() const { return static_cast<double>(a_) / static_cast<double>(q_); }

  friend bool operator==(const ReducedFraction&, const ReducedFraction&) = default;

private:
  std::uint64_t a_;
  std::uint64_t q_;
};

/// A frequency theta = a/q + offset, where a/q is carried exactly and the
/// offset is a double treated as the exact dyadic rational it encodes.
///
/// Phases x * theta mod 1 are reduced without forming large floating-point
/// products: the rational part through integer arithmetic mod q, the offset
/// through exact multiplication of the integer by the offset's mantissa modulo
/// the power of two in its denominator.
class Frequency {
public:
  Frequency() = default;
  static Frequency real(double theta) { return Frequency(0, 1, theta); }
  static Frequency rational(std::uint64_t a, std::uint64_t q);
  static Frequency near(const ReducedFraction& center, double alpha) {
    return Frequency(center.a() % center.q(), center.q(), alpha);
  }

  std::uint64_t numerator() const { return a_; }
  std::uint64_t denominator() const { return q_; }
  double offset() const { return offset_; }
  /// theta as a double (rounded).
  double value() const;

  /// frac(x * theta) in [0, 1).
  double turns(std::uint64_t x) const;
  /// frac(n^k * theta) in [0, 1).
  double power_turns(std::uint64_t n, int k) const;

private:
  Frequency(std::uint64_t a, std::uint64_t q, double offset) : a_(a), q_(q), offset_(offset) {}

  std::uint64_t a_ = 0;
  std::uint64_t q_ = 1;
  double offset_ = 0.0;
};

/// e^{2 pi i t}.
Complex unit_phase(double turns);

/// x^e mod m with 128-bit intermediates.
std::uint64_t pow_mod(std::uint64_t x, std::uint64_t e, std::uint64_t m);

/// frac(x * offset) computed exactly for the dyadic rational offset, with x = n^k.
double dyadic_power_turns(std::uint64_t n, int k, double offset);

}  // namespace weyllab
