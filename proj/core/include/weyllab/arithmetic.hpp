#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "weyllab/convolution.hpp"
#include "weyllab/exact.hpp"

namespace weyllab {

/// Largest table length (N + 1) the counting kernels will allocate.
inline constexpr std::uint64_t kMaxCountTableLength = std::uint64_t{1} << 27;

/// r_{s,k}(l) for l = 1..N: ordered s-tuples of positive integers whose k-th
/// powers sum to l, optionally with every part restricted to 1..part_bound.
struct CountTable {
  int s = 1;
  int k = 1;
  std::uint64_t N = 1;
  std::optional<std::uint64_t> part_bound;
  /// Indexed by l; counts.at(0) is always 0.
  CountSequence counts;

  BigInt count(std::uint64_t l) const { return counts.at(static_cast<std::size_t>(l)); }

  friend bool operator==(const CountTable&, const CountTable&) = default;
};

/// Indicator of {n^k : 1 <= n <= part_bound} on 0..N.
CountSequence power_indicator(int k, std::uint64_t N, std::optional<std::uint64_t> part_bound = {});

/// Exact r_{s,k}(l) table via s - 1 truncated convolutions of the power indicator.
/// Throws InvalidArgument for s, k, N, part_bound < 1 and BudgetExceeded when the
/// table would exceed kMaxCountTableLength entries.
CountTable representation_counts(int s, int k, std::uint64_t N,
                                 std::optional<std::uint64_t> part_bound = {},
                                 const ConvolutionOptions& options = {});

/// Truncated convolution of two tables with equal k, N and part bound.
CountTable combine_tables(const CountTable& a, const CountTable& b,
                          const ConvolutionOptions& options = {});

/// sum_{l <= N} r_{s,k}(l)^2.
BigInt mean_value_sum(int s, int k, std::uint64_t N);
BigInt mean_value_sum(const CountTable& table);

/// Number of 2s-tuples in [1, X]^{2s} with x_1^k + ... + x_s^k = x_{s+1}^k + ... + x_{2s}^k.
/// Computed as sum_l c(l)^2 with c the part-bounded table up to s X^k.
BigInt lattice_mean_value(int s, int k, std::uint64_t X);

/// Compares sum_{l <= N} r^2 with the lattice count at X = floor(N^{1/k}).
///
/// The lattice count also includes common values l > N whose parts are all
/// <= X, so the truncated sum is only a lower bound for it.
struct MeanSquareComparison {
  std::uint64_t N = 0;
  std::uint64_t X = 0;
  BigInt sum_up_to_N;
  BigInt lattice;
  bool equal() const { return sum_up_to_N == lattice; }
};
MeanSquareComparison compare_mean_square_with_lattice(int s, int k, std::uint64_t N);

/// 2s-tuples in [1, X]^{2s} whose second half permutes the first. Independent of k.
BigInt diagonal_count(int s, std::uint64_t X);

struct VinogradovCount {
  int s = 1;
  int k = 1;
  std::uint64_t X = 1;
  BigInt value;
};

/// Tuples in [1, X]^{2s} solving the power-sum system for every degree 1..k,
/// counted by bucketing power-sum vectors of s-tuples and summing squared
/// bucket sizes. Rejects X^s above the enumeration budget.
VinogradovCount vinogradov_count(int s, int k, std::uint64_t X);

/// Enumeration budget (number of s-tuples) for vinogradov_count.
inline constexpr std::uint64_t kMaxVinogradovTuples = std::uint64_t{1} << 26;

}  // namespace weyllab
