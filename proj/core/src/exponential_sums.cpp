#include "weyllab/exponential_sums.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "weyllab/error.hpp"
#include "weyllab/exact.hpp"
#include "weyllab/parallel.hpp"
#include "weyllab/summation.hpp"

namespace weyllab {

Complex weyl_sum_complete(const ReducedFraction& frac, int k) {
  detail::require(k >= 1, "weyl_sum_complete: k must be >= 1");
  const std::uint64_t q = frac.q();
  CompensatedSum<Complex> sum;
  for (std::uint64_t l = 1; l <= q; ++l) {
    const std::uint64_t residue = pow_mod(l, static_cast<std::uint64_t>(k), q);
    const auto num = static_cast<std::uint64_t>(static_cast<unsigned __int128>(residue) * frac.a() % q);
    sum.add(unit_phase(static_cast<double>(num) / static_cast<double>(q)));
  }
  return sum.value();
}

ClassicalBoundAudit classical_bound_audit(int k, std::uint64_t q_max) {
  detail::require(k >= 1, "classical_bound_audit: k must be >= 1");
  detail::require(q_max >= 2, "classical_bound_audit: q_max must be >= 2");
  ClassicalBoundAudit audit;
  audit.k = k;
  audit.q_max = q_max;
  for (std::uint64_t q = 1; q <= q_max; ++q) {
    const double scale = std::pow(static_cast<double>(q), 1.0 - 1.0 / k);
    WeylAuditRow best{q, 0, -1.0, -1.0};
    for (std::uint64_t a = 1; a <= q; ++a) {
      if (std::gcd(a, q) != 1) continue;
      const double mag = std::abs(weyl_sum_complete(ReducedFraction(a, q), k));
      WeylAuditRow row{q, a, mag, mag / scale};
      audit.rows.push_back(row);
      if (row.ratio > best.ratio) best = row;
    }
    audit.per_q_maxima.push_back(best);
    audit.max_ratio = std::max(audit.max_ratio, best.ratio);
  }
  return audit;
}

Complex partial_weyl_sum(int k, const Frequency& theta, std::uint64_t M, std::uint64_t N) {
  detail::require(k >= 1, "partial_weyl_sum: k must be >= 1");
  detail::require(N >= 1, "partial_weyl_sum: N must be >= 1");
  CompensatedSum<Complex> sum;
  for (std::uint64_t n = M; n < M + N; ++n) {
    sum.add(unit_phase(-theta.power_turns(n, k)));
  }
  return sum.value();
}

Complex weyl_sum_box(int k, const Frequency& alpha, std::uint64_t X) {
  CompensatedSum<Complex> sum;
  for (std::uint64_t n = 1; n <= X; ++n) {
    sum.add(unit_phase(alpha.power_turns(n, k)));
  }
  return sum.value();
}

double mean_value_quadrature(int s, int k, std::uint64_t X) {
  detail::require(s >= 1 && k >= 1 && X >= 1, "mean_value_quadrature: s, k, X must be >= 1");
  const auto xk = checked_pow(X, k);
  if (!xk || *xk >= kMaxQuadratureSamples / static_cast<std::uint64_t>(s)) {
    throw BudgetExceeded("mean_value_quadrature: s * X^k + 1 samples exceeds budget");
  }
  // |S|^{2s} = S^s conj(S)^s is a trigonometric polynomial whose frequencies
  // are differences of two sums of s k-th powers, hence bounded by s X^k in
  // absolute value. Averaging over M > s X^k equally spaced points kills every
  // nonzero frequency and leaves exactly the constant term, which is the integral.
  const std::uint64_t M = static_cast<std::uint64_t>(s) * *xk + 1;
  if (static_cast<double>(M) * static_cast<double>(X) > 4.0e9) {
    throw BudgetExceeded("mean_value_quadrature: work X * M exceeds budget");
  }
  std::vector<std::uint64_t> power_residue(X + 1);
  for (std::uint64_t n = 1; n <= X; ++n) power_residue[n] = pow_mod(n, k, M);

  std::vector<double> values(M);
  parallel_for(M, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      CompensatedSum<Complex> sum;
      for (std::uint64_t n = 1; n <= X; ++n) {
        const auto num = static_cast<std::uint64_t>(static_cast<unsigned __int128>(power_residue[n]) * i % M);
        sum.add(unit_phase(static_cast<double>(num) / static_cast<double>(M)));
      }
      values[i] = std::pow(std::norm(sum.value()), s);
    }
  });
  return pairwise_sum<double>(values) / static_cast<double>(M);
}

double eta_bound(double s, int k) {
  detail::require(s > 0, "eta_bound: s must be positive");
  detail::require(k >= 1, "eta_bound: k must be >= 1");
  const double kk = static_cast<double>(k) * k;
  return kk * std::exp(-2.0 * s / kk);
}

ExponentReport sigma_report(int k, double beta0) {
  detail::require(k >= 2, "sigma_report: k must be >= 2");
  if (!(beta0 > 0.0 && beta0 <= 1.0)) {
    throw InvalidArgument("sigma_report: beta0 must lie in (0, 1]");
  }
  ExponentReport rep;
  rep.k = k;
  rep.beta0 = beta0;
  rep.window = static_cast<int>(std::ceil(8.0 * k * k * std::log(static_cast<double>(k))));

  rep.sigma1 = beta0 / std::ldexp(1.0, k - 1);

  rep.sigma2 = -std::numeric_limits<double>::infinity();
  for (int s = 1; s <= rep.window; ++s) {
    const double v = (beta0 - eta_bound(s, k - 1)) / (2.0 * s);
    if (v > rep.sigma2) {
      rep.sigma2 = v;
      rep.sigma2_argmax = s;
    }
  }
  if (k >= 3) {
    const double km1 = k - 1.0;
    const double s_star = 2.0 * km1 * km1 * std::log(km1);
    rep.sigma2_simplified = (beta0 - eta_bound(s_star, k - 1)) / (2.0 * s_star);
  }

  if (beta0 > 1.0 - 1.0 / k) {
    double best = -std::numeric_limits<double>::infinity();
    const int s_min = std::max(1, k * (k - 1) / 2);
    for (int r = 1; 2 * r <= k; ++r) {
      double a = -std::numeric_limits<double>::infinity();
      for (int s = s_min; s <= rep.window; ++s) {
        a = std::max(a, (r - eta_bound(s, k - 1)) / (2.0 * r * s));
      }
      double b = -std::numeric_limits<double>::infinity();
      for (int t = 1; t <= rep.window; ++t) {
        b = std::max(b, (k - r * (1.0 + eta_bound(t, k))) / (2.0 * t * k));
      }
      const double v = std::min(a, b);
      if (v > best) {
        best = v;
        rep.sigma3_r = r;
      }
    }
    rep.sigma3 = best;
  }

  rep.sigma_max = std::max(rep.sigma1, rep.sigma2);
  if (rep.sigma3) rep.sigma_max = std::max(rep.sigma_max, *rep.sigma3);
  return rep;
}

}  // namespace weyllab
