#pragma once

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <random>
#include <vector>

#include "weyllab/exact.hpp"

namespace weyllab::testing {

/// Seed for randomized property checks; WEYLLAB_TEST_SEED overrides the default.
inline std::uint64_t seed() {
  if (const char* env = std::getenv("WEYLLAB_TEST_SEED")) {
    return std::strtoull(env, nullptr, 10);
  }
  return 20240917;
}

inline std::mt19937_64 rng(std::uint64_t salt = 0) { return std::mt19937_64(seed() ^ (salt * 0x9e3779b97f4a7c15ull)); }

/// r_{s,k}(l) for l <= N by walking every ordered s-tuple.
inline std::vector<BigInt> brute_force_counts(int s, int k, std::uint64_t N) {
  std::vector<std::uint64_t> powers;
  for (std::uint64_t n = 1;; ++n) {
    std::uint64_t p = 1;
    for (int i = 0; i < k; ++i) p *= n;
    if (p > N) break;
    powers.push_back(p);
  }
  std::vector<BigInt> counts(N + 1);
  std::function<void(int, std::uint64_t)> walk = [&](int left, std::uint64_t sum) {
    if (left == 0) {
      counts[sum] += 1;
      return;
    }
    for (std::size_t i = 0; i < powers.size() && sum + powers[i] <= N; ++i) {
      walk(left - 1, sum + powers[i]);
    }
  };
  walk(s, 0);
  return counts;
}

}  // namespace weyllab::testing
