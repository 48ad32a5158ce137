#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace weyllab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact nonnegative integer sequence.
///
/// Values live in 64-bit storage while they fit. Any operation that would
/// overflow promotes the whole sequence to arbitrary precision, so callers
/// never observe wrapped counts.
class CountSequence {
public:
  CountSequence() = default;
  explicit CountSequence(std::size_t size) : narrow_(size, 0) {}
  explicit CountSequence(std::vector<std::uint64_t> values) : narrow_(std::move(values)) {}
  explicit CountSequence(std::vector<BigInt> values);

  std::size_t size() const;
  bool empty() const { return size() == 0; }
  bool is_wide() const { return wide_.has_value(); }

  BigInt at(std::size_t i) const;
  void set(std::size_t i, const BigInt& value);
  void resize(std::size_t n);

  /// 64-bit view; only valid while !is_wide().
  std::span<const std::uint64_t> narrow() const { return narrow_; }
  /// Arbitrary-precision copy of the sequence (works in either mode).
  std::vector<BigInt> wide() const;

  /// Largest element (0 for an empty sequence).
  BigInt max_value() const;
  /// Number of nonzero entries.
  std::size_t nonzeros() const;

  /// Demote back to 64-bit storage if every element fits.
  void compact();

  friend bool operator==(const CountSequence& a, const CountSequence& b);

private:
  std::vector<std::uint64_t> narrow_;
  std::optional<std::vector<BigInt>> wide_;
};

/// Sum of squares of all entries, exact.
BigInt sum_of_squares(const CountSequence& seq, std::size_t first, std::size_t last);

/// floor(n^(1/k)) computed exactly (no floating-point root).
std::uint64_t integer_root(std::uint64_t n, int k);

/// x^k, or nullopt when it exceeds 2^64 - 1.
std::optional<std::uint64_t> checked_pow(std::uint64_t x, int k);

/// The exact dyadic rational a finite double encodes.
Rational exact_rational(double x);

/// Closest double to a rational.
double to_double(const Rational& r);

}  // namespace weyllab
