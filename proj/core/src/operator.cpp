#include "weyllab/operator.hpp"

#include <algorithm>
#include <cmath>

#include "weyllab/error.hpp"
#include "weyllab/exact.hpp"
#include "weyllab/summation.hpp"

namespace weyllab {
namespace {

struct Kernel {
  std::vector<std::uint64_t> shift;  // m^k
  std::vector<double> weight;        // m^{-lambda}
};

Kernel make_kernel(int k, double lambda, std::uint64_t M) {
  detail::require(k >= 1 && k <= 32, "k must lie in [1, 32]");
  detail::require(lambda > 0.0 && lambda < 1.0, "lambda must lie in (0, 1)");
  detail::require(M >= 1, "truncation M must be >= 1");
  const auto top = checked_pow(M, k);
  if (!top || *top > kMaxOperatorLength) {
    throw BudgetExceeded("operator kernel support M^k exceeds the length budget");
  }
  Kernel ker;
  for (std::uint64_t m = 1; m <= M; ++m) {
    ker.shift.push_back(*checked_pow(m, k));
    ker.weight.push_back(std::pow(static_cast<double>(m), -lambda));
  }
  return ker;
}

}  // namespace

std::uint64_t default_truncation(int k, std::uint64_t output_length) {
  detail::require(k >= 1, "k must be >= 1");
  std::uint64_t r = integer_root(output_length, k);
  if (*checked_pow(r, k) < output_length) ++r;
  return r + 1;
}

SignalVector apply_operator(int k, double lambda, const SignalVector& f, std::uint64_t M,
                            OperatorMethod method) {
  const Kernel ker = make_kernel(k, lambda, M);
  if (f.values.empty()) {
    return {};
  }
  const std::uint64_t length = f.size() - 1 + ker.shift.back();
  if (length > kMaxOperatorLength) {
    throw BudgetExceeded("operator output exceeds the length budget");
  }
  SignalVector g{f.offset + 1, std::vector<Complex>(length)};

  if (method == OperatorMethod::automatic) {
    const auto nz = static_cast<std::size_t>(
        std::count_if(f.values.begin(), f.values.end(), [](Complex v) { return v != Complex{}; }));
    method = 4 * nz < f.size() ? OperatorMethod::sparse : OperatorMethod::direct;
  }
  if (method == OperatorMethod::direct) {
    for (std::size_t m = 0; m < ker.shift.size(); ++m) {
      const std::size_t base = ker.shift[m] - 1;
      for (std::size_t i = 0; i < f.size(); ++i) {
        g.values[base + i] += f.values[i] * ker.weight[m];
      }
    }
  } else {
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (f.values[i] == Complex{}) continue;
      for (std::size_t m = 0; m < ker.shift.size(); ++m) {
        g.values[i + ker.shift[m] - 1] += f.values[i] * ker.weight[m];
      }
    }
  }
  return g;
}

SignalVector apply_operator_window(int k, double lambda, const SignalVector& f, std::int64_t first,
                                   std::uint64_t length, std::uint64_t M) {
  const Kernel ker = make_kernel(k, lambda, M);
  if (length > kMaxOperatorLength) {
    throw BudgetExceeded("operator window exceeds the length budget");
  }
  SignalVector g{first, std::vector<Complex>(length)};
  for (std::uint64_t i = 0; i < length; ++i) {
    const std::int64_t n = first + static_cast<std::int64_t>(i);
    CompensatedSum<Complex> sum;
    for (std::size_t m = 0; m < ker.shift.size(); ++m) {
      const std::int64_t src = n - static_cast<std::int64_t>(ker.shift[m]);
      if (src < f.first()) break;
      sum.add(f.at(src) * ker.weight[m]);
    }
    g.values[i] = sum.value();
  }
  return g;
}

PowerWitness necessity_witness_power(int k, double lambda, double inv_p, double inv_q, double gamma,
                                     std::span<const std::uint64_t> lengths) {
  detail::require(inv_p > 0.0 && inv_p <= 1.0, "1/p must lie in (0, 1]");
  detail::require(inv_q >= 0.0 && inv_q <= 1.0, "1/q must lie in [0, 1]");
  detail::require(gamma > inv_p, "gamma must exceed 1/p so that f lies in l^p");
  detail::require(lengths.size() >= 2, "need at least two lengths");
  detail::require(std::is_sorted(lengths.begin(), lengths.end()) &&
                      std::adjacent_find(lengths.begin(), lengths.end()) == lengths.end(),
                  "lengths must be strictly increasing");

  PowerWitness w;
  w.k = k;
  w.lambda = lambda;
  w.inv_p = inv_p;
  w.inv_q = inv_q;
  w.gamma = gamma;
  const double p = 1.0 / inv_p;
  const double q = inv_q == 0.0 ? INFINITY : 1.0 / inv_q;
  for (const std::uint64_t L : lengths) {
    detail::require(L >= 1, "lengths must be >= 1");
    SignalVector f{1, std::vector<Complex>(L)};
    for (std::uint64_t n = 1; n <= L; ++n) {
      f.values[n - 1] = std::pow(static_cast<double>(n), -gamma);
    }
    const SignalVector g = apply_operator_window(k, lambda, f, 1, L, default_truncation(k, L));
    PowerWitnessRow row;
    row.length = L;
    row.input_norm = lp_norm(f, p);
    row.output_norm = lp_norm(g, q);
    row.ratio = row.output_norm / row.input_norm;
    w.rows.push_back(row);
  }
  w.strictly_increasing = true;
  for (std::size_t i = 1; i < w.rows.size(); ++i) {
    if (!(w.rows[i].ratio > w.rows[i - 1].ratio)) w.strictly_increasing = false;
  }
  const double last = w.rows.back().ratio;
  const double prev = w.rows[w.rows.size() - 2].ratio;
  w.last_increment = (last - prev) / prev;
  w.stabilizes = std::abs(w.last_increment) < 0.01;
  return w;
}

DeltaWitness necessity_witness_delta(int k, double lambda, double q, std::span<const std::uint64_t> Ms) {
  detail::require(k >= 1, "k must be >= 1");
  detail::require(lambda > 0.0 && lambda < 1.0, "lambda must lie in (0, 1)");
  detail::require(q >= 1.0, "q must be >= 1");
  detail::require(Ms.size() >= 3, "need at least three truncations");
  detail::require(Ms.front() >= 1 && std::is_sorted(Ms.begin(), Ms.end()) &&
                      std::adjacent_find(Ms.begin(), Ms.end()) == Ms.end(),
                  "truncations must be strictly increasing");
  detail::require(Ms.back() <= (std::uint64_t{1} << 32), "truncation too large");

  DeltaWitness w;
  w.k = k;
  w.lambda = lambda;
  w.q = q;
  // I g(m^k) = m^{-lambda}, so the l^q mass up to m = M is a p-series.
  const double a = lambda * q;
  CompensatedSum<double> sum;
  std::uint64_t m = 0;
  for (const std::uint64_t M : Ms) {
    while (m < M) {
      ++m;
      sum.add(std::pow(static_cast<double>(m), -a));
    }
    w.rows.push_back({M, sum.value()});
  }
  const std::size_t n = w.rows.size();
  const double d1 = w.rows[n - 2].partial_sum - w.rows[n - 3].partial_sum;
  const double d2 = w.rows[n - 1].partial_sum - w.rows[n - 2].partial_sum;
  const double rho = static_cast<double>(Ms[n - 1]) / static_cast<double>(Ms[n - 2]);
  // Increments over [M, rho M] scale like M^{1 - a}.
  w.exponent_estimate = 1.0 - std::log(d2 / d1) / std::log(rho);
  w.divergent = w.exponent_estimate <= 1.0 + 1e-3;
  return w;
}

}  // namespace weyllab
