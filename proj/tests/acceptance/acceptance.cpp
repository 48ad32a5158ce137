// One line per acceptance criterion; exit status is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <unistd.h>
#include <vector>

#include "app.hpp"
#include "cache.hpp"
#include "weyllab/arithmetic.hpp"
#include "weyllab/circle_method.hpp"
#include "weyllab/exponential_sums.hpp"
#include "weyllab/fit.hpp"
#include "weyllab/format.hpp"
#include "weyllab/multiplier.hpp"
#include "weyllab/operator.hpp"
#include "weyllab/regions.hpp"

using namespace weyllab;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(double x) { return format_double(x); }

// Brute-force r_{s,k}(l) for l <= N; k = 1 uses binomial(l-1, s-1).
std::vector<BigInt> oracle_counts(int s, int k, std::uint64_t N) {
  std::vector<BigInt> counts(N + 1);
  if (k == 1) {
    for (std::uint64_t l = 1; l <= N; ++l) {
      BigInt c = 0;
      if (l >= std::uint64_t(s)) {
        c = 1;
        for (int i = 1; i < s; ++i) c = c * BigInt(l - i) / i;
      }
      counts[l] = c;
    }
    return counts;
  }
  std::vector<std::uint64_t> powers;
  for (std::uint64_t n = 1;; ++n) {
    std::uint64_t p = 1;
    for (int i = 0; i < k; ++i) p *= n;
    if (p > N) break;
    powers.push_back(p);
  }
  std::function<void(int, std::uint64_t)> walk = [&](int left, std::uint64_t sum) {
    if (left == 0) {
      counts[sum] += 1;
      return;
    }
    for (std::size_t i = 0; i < powers.size() && sum + powers[i] <= N; ++i) walk(left - 1, sum + powers[i]);
  };
  walk(s, 0);
  counts[0] = 0;
  return counts;
}

Verdict parseval_exactness() {
  double worst = 0.0;
  int cases = 0;
  for (int s = 1; s <= 3; ++s) {
    for (int k = 1; k <= 3; ++k) {
      for (std::uint64_t X = 1; X <= 12; ++X) {
        const double lattice = lattice_mean_value(s, k, X).convert_to<double>();
        worst = std::max(worst, std::abs(mean_value_quadrature(s, k, X) - lattice) / lattice);
        ++cases;
      }
    }
  }
  return {worst <= 1e-6, std::to_string(cases) + " cases, max relative error " + fmt(worst)};
}

Verdict oracle_equivalence() {
  const std::uint64_t N = 5000;
  int mismatches = 0;
  for (int s = 1; s <= 3; ++s) {
    for (int k = 1; k <= 4; ++k) {
      const auto fast = representation_counts(s, k, N);
      const auto slow = oracle_counts(s, k, N);
      for (std::uint64_t l = 1; l <= N; ++l) mismatches += fast.counts.at(l) != slow[l];
    }
  }
  const BigInt taxicab = representation_counts(2, 3, 1729).counts.at(1729);
  return {mismatches == 0 && taxicab == 4,
          std::to_string(mismatches) + " mismatches over s<=3, k<=4, N=" + std::to_string(N) +
              "; r_2,3(1729) = " + to_string(taxicab)};
}

Verdict threshold_constants() {
  std::vector<std::string> failures;
  auto expect = [&](const std::string& what, const Rational& got, const Rational& want) {
    if (got != want) failures.push_back(what + " = " + to_string(got) + " (want " + to_string(want) + ")");
  };
  const auto t1 = region_predicate(Statement::theorem1, RegionQuery{3, 0.9, 0.5, 0.5});
  if (!t1.lambda_gate_exact) {
    failures.push_back("thm1 gate not exact");
  } else {
    expect("thm1 gate k=3", *t1.lambda_gate_exact, Rational(4, 5));
  }
  expect("thm3 gate k=3", theorem3_gate(3), Rational(7, 12));
  expect("thm4 gate k=3", theorem4_gate(3, false), Rational(13, 16));
  expect("delta_3", delta_k(3), Rational(5, 6));
  expect("delta_4", delta_k(4), Rational(3, 4));
  const auto cat = threshold_catalogue(9);
  for (const auto& row : cat.rows) {
    if (row.k == 3) expect("K* exponent k=3", row.k_star_exponent, Rational(7, 6));
    if (row.k == 4) expect("K* exponent k=4", row.k_star_exponent, Rational(5, 4));
  }
  const std::pair<int, std::uint64_t> table[] = {{3, 8}, {4, 16}, {5, 32}, {6, 56}, {7, 112}, {8, 224}, {9, 393}};
  for (const auto& [k, g] : table) {
    const auto got = g_tilde_table(k);
    if (!got || *got != g) failures.push_back("G~(" + std::to_string(k) + ")");
  }
  for (int k = 2; k <= 40; ++k) expect("lambda*_" + std::to_string(k), lambda_star(k), Rational(1) - Rational(k, 2 * k - 1));
  std::string detail = failures.empty() ? "all exact" : failures.front();
  return {failures.empty(), detail};
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Verdict gauss_sums() {
  double worst = 0.0;
  int sums = 0;
  for (std::uint64_t q = 3; q <= 97; ++q) {
    if (!is_prime(q)) continue;
    for (std::uint64_t a = 1; a < q; ++a, ++sums) {
      worst = std::max(worst, std::abs(std::abs(weyl_sum_complete(ReducedFraction(a, q), 2)) - std::sqrt(double(q))));
    }
  }
  return {worst <= 1e-9, std::to_string(sums) + " sums, max deviation " + fmt(worst)};
}

Verdict major_arc_decay() {
  const int k = 3;
  const double lambda = 0.9;
  const ReducedFraction frac(1, 3);
  std::vector<double> scale, error;
  bool bounded = true;
  int inside = 0;
  double worst_ratio = 0.0;
  for (int j = 4; j <= 12; ++j) {
    const double alpha = std::ldexp(1.0, -j * k);
    const auto r = major_arc_approximation(k, lambda, frac, alpha, j);
    const double cap = 10.0 * frac.q() * std::pow(2.0, -j * lambda);
    bounded = bounded && r.error <= cap;
    inside += r.inside_major_arc;
    worst_ratio = std::max(worst_ratio, r.error / cap * 10.0);
    scale.push_back(std::ldexp(1.0, j));
    error.push_back(r.error);
  }
  const double exponent = -growth_exponent_fit(scale, error).slope;
  return {std::abs(exponent - lambda) <= 0.15 && bounded,
          "decay exponent " + fmt(exponent) + ", max error/(q 2^-j lambda) " + fmt(worst_ratio) + ", " +
              std::to_string(inside) + "/9 levels with q below the major-arc denominator bound"};
}

Verdict hua_growth() {
  std::string detail;
  bool pass = true;
  const struct {
    int s;
    double lo, hi;
  } cases[] = {{2, 2.0 / 3.0, 0.95}, {3, 1.0, 7.0 / 6.0 + 0.15}};
  for (const auto& c : cases) {
    const auto table = representation_counts(c.s, 3, 65536);
    std::vector<double> xs, ys;
    for (std::uint64_t N = 256; N <= 65536; N *= 2) {
      xs.push_back(double(N));
      ys.push_back(sum_of_squares(table.counts, 1, N + 1).convert_to<double>());
    }
    const double slope = growth_exponent_fit(xs, ys).slope;
    pass = pass && slope >= c.lo && slope <= c.hi;
    detail += (detail.empty() ? "" : ", ") + std::string("s=") + std::to_string(c.s) + " slope " + fmt(slope);
  }
  return {pass, detail};
}

Verdict necessity_witnesses() {
  std::vector<std::uint64_t> lengths;
  for (std::uint64_t L = 1024; L <= 65536; L *= 2) lengths.push_back(L);
  const auto violated = necessity_witness_power(2, 0.7, 0.4, 0.35, 0.45, lengths);
  const auto line = necessity_witness_power(2, 0.7, 0.4, 0.25, 0.45, lengths);
  const std::pair<double, double> grid[] = {
      {0.5, 2},    {0.25, 4},  {0.125, 8}, {0.5, 1.5}, {0.3, 2},   {0.9, 1},   {0.2, 3},
      {0.6, 1.5},  {0.45, 2},  {0.1, 5},   {0.5, 3},   {0.7, 2},   {0.9, 2},   {0.6, 2},
      {0.3, 4},    {0.25, 5},  {0.55, 2},  {0.8, 1.5}, {0.35, 4},  {0.95, 1.25}};
  std::vector<std::uint64_t> Ms;
  for (std::uint64_t M = 16; M <= (1u << 20); M *= 2) Ms.push_back(M);
  int wrong = 0;
  for (const auto& [lambda, q] : grid) {
    const auto w = necessity_witness_delta(2, lambda, q, Ms);
    wrong += w.divergent != (lambda * q <= 1.0);
  }
  return {violated.strictly_increasing && line.stabilizes && wrong == 0,
          std::string("violated ") + (violated.strictly_increasing ? "increasing" : "not increasing") +
              ", line last increment " + fmt(line.last_increment) + ", delta grid " +
              std::to_string(20 - wrong) + "/20"};
}

Verdict operator_consistency() {
  std::mt19937_64 gen(20240917);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> len(8, 96);
  std::uniform_int_distribution<int> off(-40, 40);
  double worst = 0.0;
  for (int t = 0; t < 10; ++t) {
    const int k = 2 + t % 2;
    const double lambda = (t / 2) % 2 == 0 ? 0.6 : 0.9;
    SignalVector f{off(gen), std::vector<Complex>(len(gen))};
    for (auto& v : f.values) v = Complex(u(gen), u(gen));
    const std::uint64_t M = 5 + t;
    const auto g = apply_operator(k, lambda, f, M);
    for (std::uint64_t i = 0; i < 128; ++i) {
      const auto theta = Frequency::rational(i, 128);
      worst = std::max(worst, std::abs(dft(g, theta) - multiplier_truncated(k, lambda, theta, M).value * dft(f, theta)));
    }
  }
  return {worst <= 1e-8, "10 signals x 128 frequencies, max error " + fmt(worst)};
}

Verdict mellin() {
  double worst = 0.0;
  for (const std::uint64_t n : {1ULL, 10ULL, 1000ULL}) {
    for (const int k : {1, 2, 3}) {
      for (const double lambda : {0.2, 0.5, 0.9}) {
        const auto c = mellin_identity_check(k, lambda, n);
        worst = std::max(worst, std::abs(c.lhs - c.rhs) / c.lhs);
      }
    }
  }
  return {worst <= 1e-9, "27 cases, max relative error " + fmt(worst)};
}

Verdict determinism_and_cache() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("weyllab-acceptance-" + std::to_string(::getpid()));
  fs::remove_all(dir);
  std::vector<std::string> failures;

  const std::pair<std::string, app::Json> runs[] = {
      {"counts", {{"s", "3"}, {"k", "3"}, {"N", "20000"}}},
      {"multiplier", {{"grid", "2048"}, {"truncN", "512"}}},
      {"regions", {{"grid", "16"}}},
      {"audit", {{"name", "consistency"}, {"signals", "4"}}},
      {"arcs", {{"j", "10"}}},
  };
  for (const auto& [command, flags] : runs) {
    auto config = app::make_config(command, flags, app::Json());
    config.cache_dir = dir;
    const std::string cold = app::render(config);
    const std::string warm = app::render(config);
    config.use_cache = false;
    const std::string uncached = app::render(config);
    if (cold != warm || cold != uncached) failures.push_back(command + " output differs between runs");
  }

  app::CountCache cache(dir);
  CountTable synthetic = representation_counts(2, 3, 4000);
  const BigInt wide = (BigInt(1) << 100) + 12345;
  synthetic.counts.set(1729, wide);
  synthetic.N = 4000;
  cache.store(synthetic);
  const auto back = cache.load(2, 3, 4000, std::nullopt);
  if (!back || !(*back == synthetic) || back->counts.at(1729) != wide) failures.push_back("wide roundtrip");

  fs::remove_all(dir);
  return {failures.empty(), failures.empty() ? "5 commands byte-identical cold/warm/uncached; 2^100+12345 roundtrip exact"
                                             : failures.front()};
}

}  // namespace

int main() {
  const std::pair<const char*, Verdict (*)()> criteria[] = {
      {"parseval exactness", parseval_exactness},
      {"oracle equivalence", oracle_equivalence},
      {"threshold constants", threshold_constants},
      {"gauss-sum audit", gauss_sums},
      {"major-arc decay", major_arc_decay},
      {"hua-regime growth", hua_growth},
      {"necessity witnesses", necessity_witnesses},
      {"multiplier/operator consistency", operator_consistency},
      {"mellin identity", mellin},
      {"determinism and cache", determinism_and_cache},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !v.pass;
    std::printf("%s %2d %-32s %s [%.2fs]\n", v.pass ? "PASS" : "FAIL", index, name, v.detail.c_str(), seconds);
    std::fflush(stdout);
  }
  return failures;
}
