#include "weyllab/arithmetic.hpp"

#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

#include <boost/container_hash/hash.hpp>

#include "weyllab/error.hpp"

namespace weyllab {

namespace {

void check_table_budget(std::uint64_t N) {
  if (N >= kMaxCountTableLength) {
    throw BudgetExceeded("count table of length " + std::to_string(N) + " exceeds budget of " +
                         std::to_string(kMaxCountTableLength) + " entries");
  }
}

}  // namespace

CountSequence power_indicator(int k, std::uint64_t N, std::optional<std::uint64_t> part_bound) {
  detail::require(k >= 1, "power_indicator: k must be >= 1");
  check_table_budget(N);
  std::vector<std::uint64_t> ind(N + 1, 0);
  std::uint64_t top = integer_root(N, k);
  if (part_bound) top = std::min(top, *part_bound);
  for (std::uint64_t n = 1; n <= top; ++n) {
    ind[*checked_pow(n, k)] = 1;
  }
  return CountSequence(std::move(ind));
}

CountTable representation_counts(int s, int k, std::uint64_t N,
                                 std::optional<std::uint64_t> part_bound,
                                 const ConvolutionOptions& options) {
  detail::require(s >= 1, "representation_counts: s must be >= 1");
  detail::require(k >= 1, "representation_counts: k must be >= 1");
  detail::require(N >= 1, "representation_counts: N must be >= 1");
  detail::require(!part_bound || *part_bound >= 1, "representation_counts: part bound must be >= 1");
  check_table_budget(N);

  const CountSequence indicator = power_indicator(k, N, part_bound);
  CountSequence counts = indicator;
  const auto length = static_cast<std::size_t>(N + 1);
  for (int i = 1; i < s; ++i) {
    counts = truncated_convolution(counts, indicator, length, options);
  }
  return CountTable{s, k, N, part_bound, std::move(counts)};
}

CountTable combine_tables(const CountTable& a, const CountTable& b, const ConvolutionOptions& options) {
  detail::require(a.k == b.k && a.N == b.N && a.part_bound == b.part_bound,
                  "combine_tables: tables must share k, N and part bound");
  CountSequence counts =
      truncated_convolution(a.counts, b.counts, static_cast<std::size_t>(a.N + 1), options);
  return CountTable{a.s + b.s, a.k, a.N, a.part_bound, std::move(counts)};
}

BigInt mean_value_sum(const CountTable& table) {
  return sum_of_squares(table.counts, 1, static_cast<std::size_t>(table.N + 1));
}

BigInt mean_value_sum(int s, int k, std::uint64_t N) {
  return mean_value_sum(representation_counts(s, k, N));
}

BigInt lattice_mean_value(int s, int k, std::uint64_t X) {
  detail::require(s >= 1 && k >= 1 && X >= 1, "lattice_mean_value: s, k, X must be >= 1");
  const auto xk = checked_pow(X, k);
  if (!xk || *xk > kMaxCountTableLength / static_cast<std::uint64_t>(s)) {
    throw BudgetExceeded("lattice_mean_value: s * X^k exceeds the count table budget");
  }
  const std::uint64_t N = static_cast<std::uint64_t>(s) * *xk;
  return mean_value_sum(representation_counts(s, k, N, X));
}

MeanSquareComparison compare_mean_square_with_lattice(int s, int k, std::uint64_t N) {
  MeanSquareComparison out;
  out.N = N;
  out.X = integer_root(N, k);
  out.sum_up_to_N = mean_value_sum(s, k, N);
  out.lattice = lattice_mean_value(s, k, out.X);
  return out;
}

BigInt diagonal_count(int s, std::uint64_t X) {
  detail::require(s >= 1 && X >= 1, "diagonal_count: s and X must be >= 1");
  // Sum over multisets of size s drawn from [1, X] of (s! / prod m_v!)^2, where
  // m_v is the multiplicity of value v. Processing the values one at a time,
  // g[t] holds (t!)^2 * sum over multiplicity assignments of total t of
  // prod 1/(m_v!)^2, and adding a value with multiplicity m multiplies by C(t, m)^2.
  const auto n = static_cast<std::size_t>(s);
  std::vector<std::vector<BigInt>> binom(n + 1, std::vector<BigInt>(n + 1, 0));
  for (std::size_t i = 0; i <= n; ++i) {
    binom[i][0] = 1;
    for (std::size_t j = 1; j <= i; ++j) binom[i][j] = binom[i - 1][j - 1] + binom[i - 1][j];
  }
  std::vector<BigInt> g(n + 1, 0);
  g[0] = 1;
  // Merging two disjoint value ranges is associative, so the X single-value
  // factors are combined by repeated squaring.
  auto step = [&](const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
    // Combine two disjoint value ranges: h[t] = sum_m a[t-m] b[m] C(t, m)^2.
    std::vector<BigInt> h(n + 1, 0);
    for (std::size_t t = 0; t <= n; ++t) {
      for (std::size_t m = 0; m <= t; ++m) {
        if (a[t - m] != 0 && b[m] != 0) h[t] += a[t - m] * b[m] * binom[t][m] * binom[t][m];
      }
    }
    return h;
  };
  std::vector<BigInt> single(n + 1, 1);  // one value: multiplicity m contributes (m!)^2 / (m!)^2
  std::uint64_t e = X;
  std::vector<BigInt> base = single;
  while (e) {
    if (e & 1) g = step(g, base);
    e >>= 1;
    if (e) base = step(base, base);
  }
  return g[n];
}

VinogradovCount vinogradov_count(int s, int k, std::uint64_t X) {
  detail::require(s >= 1 && k >= 1 && X >= 1, "vinogradov_count: s, k, X must be >= 1");
  BigInt tuples = 1;
  for (int i = 0; i < s; ++i) tuples *= X;
  if (tuples > kMaxVinogradovTuples) {
    throw BudgetExceeded("vinogradov_count: X^s exceeds the enumeration budget");
  }
  if (!checked_pow(X, k) || *checked_pow(X, k) > std::numeric_limits<std::uint64_t>::max() / s) {
    throw BudgetExceeded("vinogradov_count: power sums overflow 64 bits");
  }

  std::vector<std::vector<std::uint64_t>> powers(static_cast<std::size_t>(X + 1),
                                                 std::vector<std::uint64_t>(k));
  for (std::uint64_t x = 1; x <= X; ++x) {
    std::uint64_t p = 1;
    for (int j = 0; j < k; ++j) {
      p *= x;
      powers[x][j] = p;
    }
  }

  std::unordered_map<std::vector<std::uint64_t>, std::uint64_t,
                     boost::hash<std::vector<std::uint64_t>>>
      buckets;
  std::vector<std::uint64_t> tuple(static_cast<std::size_t>(s), 1);
  std::vector<std::uint64_t> key(static_cast<std::size_t>(k));
  while (true) {
    std::fill(key.begin(), key.end(), 0);
    for (std::uint64_t x : tuple) {
      for (int j = 0; j < k; ++j) key[j] += powers[x][j];
    }
    ++buckets[key];
    // odometer increment
    std::size_t pos = 0;
    while (pos < tuple.size() && tuple[pos] == X) tuple[pos++] = 1;
    if (pos == tuple.size()) break;
    ++tuple[pos];
  }

  BigInt value = 0;
  for (const auto& [_, size] : buckets) {
    value += BigInt(size) * size;
  }
  return VinogradovCount{s, k, X, value};
}

}  // namespace weyllab
