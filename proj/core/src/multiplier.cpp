#include "weyllab/multiplier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "weyllab/arithmetic.hpp"
#include "weyllab/error.hpp"
#include "weyllab/exact.hpp"
#include "weyllab/exponential_sums.hpp"
#include "weyllab/parallel.hpp"
#include "weyllab/quadrature.hpp"
#include "weyllab/summation.hpp"

namespace weyllab {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kMaxPhiPanels = std::size_t{1} << 24;
constexpr double kMaxGridWork = 4.0e9;

void check_k_lambda(int k, double lambda) {
  detail::require(k >= 1 && k <= 32, "k must lie in [1, 32]");
  detail::require(std::isfinite(lambda) && lambda > 0.0, "lambda must be positive");
}

}  // namespace

MultiplierSample multiplier_truncated(int k, double lambda, const Frequency& theta, std::uint64_t N) {
  check_k_lambda(k, lambda);
  detail::require(N >= 1, "truncation N must be >= 1");
  CompensatedSum<Complex> sum;
  for (std::uint64_t n = 1; n <= N; ++n) {
    sum.add(unit_phase(-theta.power_turns(n, k)) * std::pow(static_cast<double>(n), -lambda));
  }
  MultiplierSample out;
  out.theta = theta.value();
  out.truncation = N;
  out.value = sum.value();
  out.tail_bound = std::pow(static_cast<double>(N), 1.0 - lambda);
  return out;
}

Complex dyadic_block(int k, double lambda, const Frequency& theta, int j) {
  check_k_lambda(k, lambda);
  detail::require(j >= 0 && j <= 40, "dyadic level j must lie in [0, 40]");
  const std::uint64_t lo = std::uint64_t{1} << j;
  CompensatedSum<Complex> sum;
  for (std::uint64_t n = lo; n < 2 * lo; ++n) {
    sum.add(unit_phase(-theta.power_turns(n, k)) * std::pow(static_cast<double>(n), -lambda));
  }
  return sum.value();
}

Complex phi_integral(int k, double lambda, double u) {
  check_k_lambda(k, lambda);
  detail::require(std::isfinite(u), "u must be finite");
  const double oscillations = std::abs(u) * (std::ldexp(1.0, k) - 1.0);
  const double panels = 4.0 + std::ceil(2.0 * oscillations);
  if (panels > static_cast<double>(kMaxPhiPanels)) {
    throw BudgetExceeded("phi_integral: |u| too large for the panel budget");
  }
  return gauss_legendre_panels(
      [&](double y) -> Complex {
        // y^k u mod 1 keeps the phase argument small.
        const double t = std::pow(y, k) * u;
        return unit_phase(t - std::floor(t)) * std::pow(y, -lambda);
      },
      1.0, 2.0, static_cast<std::size_t>(panels));
}

MajorArcApproximation major_arc_approximation(int k, double lambda, const ReducedFraction& frac,
                                              double alpha, int j, const ArcParameters& params) {
  check_k_lambda(k, lambda);
  detail::require(std::isfinite(alpha), "alpha must be finite");
  MajorArcApproximation out;
  out.actual = dyadic_block(k, lambda, Frequency::near(frac, alpha), j);
  const double q = static_cast<double>(frac.q());
  const Complex main = weyl_sum_complete(frac, k) / q * std::exp2(j * (1.0 - lambda)) *
                       phi_integral(k, lambda, std::ldexp(alpha, j * k));
  out.approx = std::conj(main);
  out.error = std::abs(out.actual - out.approx);
  out.inside_major_arc = q <= params.major_denominator_bound(j) &&
                         std::abs(alpha) * q * params.dirichlet_scale(j) <= 1.0;
  return out;
}

MajorArcApproximation major_arc_approximation(int k, double lambda, const ReducedFraction& frac,
                                              double alpha, int j) {
  const auto params = ArcParameters::make(k, k, std::min(1.0, lambda) - 1e-6, 1.0, lambda, true);
  return major_arc_approximation(k, lambda, frac, alpha, j, params);
}

std::uint64_t theta_kernel_terms(int k, double y) {
  detail::require(k >= 1 && k <= 32, "k must lie in [1, 32]");
  detail::require(std::isfinite(y) && y > 0.0, "y must be positive");
  // Last n with e^{-pi n^k y} >= 1e-16.
  const double cutoff = 16.0 * std::log(10.0) / (kPi * y);
  const double n = std::floor(std::pow(cutoff, 1.0 / k));
  if (n > 1.0e9) {
    throw BudgetExceeded("theta_kernel: y too small for the term budget");
  }
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(n));
}

Complex theta_kernel(int k, double y, const Frequency& theta, std::uint64_t N) {
  const std::uint64_t terms = N == 0 ? theta_kernel_terms(k, y) : N;
  CompensatedSum<Complex> sum;
  for (std::uint64_t n = 1; n <= terms; ++n) {
    const double nk = std::pow(static_cast<double>(n), k);
    sum.add(std::exp(-kPi * nk * y) * unit_phase(-theta.power_turns(n, k)));
  }
  return sum.value();
}

ThetaParseval theta_parseval(int s, int k, double y) {
  detail::require(s >= 1 && s <= 16, "s must lie in [1, 16]");
  const std::uint64_t T = theta_kernel_terms(k, y);
  const auto tk = checked_pow(T, k);
  if (!tk || *tk > kMaxQuadratureSamples / static_cast<std::uint64_t>(s)) {
    throw BudgetExceeded("theta_parseval: s * T^k + 1 samples exceeds budget");
  }
  // The truncated kernel's |S|^{2s} has frequencies of size at most s T^k.
  const std::uint64_t M = static_cast<std::uint64_t>(s) * *tk + 1;
  std::vector<std::uint64_t> residue(T + 1);
  std::vector<double> weight(T + 1);
  for (std::uint64_t n = 1; n <= T; ++n) {
    residue[n] = pow_mod(n, k, M);
    weight[n] = std::exp(-kPi * std::pow(static_cast<double>(n), k) * y);
  }
  std::vector<double> values(M);
  parallel_for(M, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      CompensatedSum<Complex> sum;
      for (std::uint64_t n = 1; n <= T; ++n) {
        const auto num = static_cast<std::uint64_t>(static_cast<unsigned __int128>(residue[n]) * i % M);
        sum.add(weight[n] * unit_phase(-static_cast<double>(num) / static_cast<double>(M)));
      }
      values[i] = std::pow(std::norm(sum.value()), s);
    }
  });

  ThetaParseval out;
  out.terms = T;
  out.integral = pairwise_sum<double>(values) / static_cast<double>(M);
  const CountTable table = representation_counts(s, k, M - 1, T);
  CompensatedSum<double> series;
  for (std::uint64_t l = 1; l < M; ++l) {
    const BigInt r = table.count(l);
    if (r != 0) {
      const double rd = r.convert_to<double>();
      series.add(rd * rd * std::exp(-2.0 * kPi * static_cast<double>(l) * y));
    }
  }
  out.series = series.value();
  return out;
}

MellinCheck mellin_identity_check(int k, double lambda, std::uint64_t n) {
  check_k_lambda(k, lambda);
  detail::require(n >= 1, "n must be >= 1");
  const double a = lambda / k;
  const double c = kPi * std::pow(static_cast<double>(n), k);
  MellinCheck out;
  out.lhs = std::pow(static_cast<double>(n), -lambda);
  out.rhs = std::pow(kPi, a) / std::tgamma(a) * gamma_kernel_integral(c, a);
  return out;
}

std::vector<CoefficientBoundRow> coefficient_bound_audit(int s, int k, double lambda, std::uint64_t L) {
  check_k_lambda(k, lambda);
  detail::require(s >= 1 && s <= 16, "s must lie in [1, 16]");
  detail::require(L >= 1 && L <= (std::uint64_t{1} << 22), "L must lie in [1, 2^22]");

  // Sparse base 1 + sum n^{-lambda} x^{n^k}, raised to the s-th power by repeated products.
  std::vector<std::pair<std::uint64_t, double>> base{{0, 1.0}};
  for (std::uint64_t n = 1;; ++n) {
    const auto nk = checked_pow(n, k);
    if (!nk || *nk > L) break;
    base.emplace_back(*nk, std::pow(static_cast<double>(n), -lambda));
  }
  std::vector<double> poly(L + 1, 0.0);
  poly[0] = 1.0;
  for (int step = 0; step < s; ++step) {
    std::vector<double> next(L + 1, 0.0);
    for (std::uint64_t i = 0; i <= L; ++i) {
      if (poly[i] == 0.0) continue;
      for (const auto& [e, w] : base) {
        if (i + e > L) break;
        next[i + e] += poly[i] * w;
      }
    }
    poly = std::move(next);
  }

  const CountTable table = representation_counts(s, k, L);
  std::vector<CoefficientBoundRow> rows;
  rows.reserve(L);
  for (std::uint64_t l = 1; l <= L; ++l) {
    CoefficientBoundRow row;
    row.l = l;
    row.coefficient = poly[l];
    row.representations = table.count(l).convert_to<std::uint64_t>();
    row.lower_bound = static_cast<double>(row.representations) *
                      std::pow(static_cast<double>(l), -s * lambda / k);
    row.holds = row.coefficient >= row.lower_bound * (1.0 - 1e-12);
    rows.push_back(row);
  }
  return rows;
}

double discrete_lu_norm(std::span<const double> magnitudes, double u) {
  detail::require(!magnitudes.empty(), "need at least one sample");
  detail::require(u > 0.0, "exponent u must be positive");
  if (std::isinf(u)) {
    return *std::max_element(magnitudes.begin(), magnitudes.end());
  }
  std::vector<double> powers(magnitudes.size());
  std::transform(magnitudes.begin(), magnitudes.end(), powers.begin(),
                 [u](double v) { return std::pow(v, u); });
  return std::pow(pairwise_sum<double>(powers) / static_cast<double>(powers.size()), 1.0 / u);
}

DistributionProfile distribution_profile(std::span<const double> magnitudes, double r,
                                         std::size_t threshold_count) {
  detail::require(!magnitudes.empty(), "need at least one sample");
  detail::require(r > 0.0, "r must be positive");
  detail::require(threshold_count >= 2, "need at least two thresholds");
  std::vector<double> sorted(magnitudes.begin(), magnitudes.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const double M = static_cast<double>(sorted.size());

  DistributionProfile out;
  out.grid = sorted.size();
  out.r = r;
  // sup over alpha is attained just below a sample value.
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    out.weak_lr = std::max(out.weak_lr, sorted[i] * std::pow((i + 1) / M, 1.0 / r));
  }
  const double top = sorted.front();
  if (top <= 0.0) {
    return out;
  }
  const double bottom = top * 1e-3;
  for (std::size_t t = 0; t < threshold_count; ++t) {
    const double alpha = bottom * std::pow(top / bottom, static_cast<double>(t) / (threshold_count - 1));
    const auto above = std::lower_bound(sorted.begin(), sorted.end(), alpha, std::greater<>()) -
                       sorted.begin();
    out.thresholds.push_back({alpha, static_cast<double>(above) / M});
  }
  return out;
}

NormProfile profile_from_samples(std::span<const double> magnitudes, std::span<const double> exponents,
                                 double r) {
  NormProfile out;
  out.grid = magnitudes.size();
  for (double u : exponents) {
    out.lu.push_back({u, discrete_lu_norm(magnitudes, u)});
  }
  out.distribution = distribution_profile(magnitudes, r);
  return out;
}

std::vector<double> multiplier_magnitudes(int k, double lambda, std::uint64_t grid,
                                          std::uint64_t truncation) {
  check_k_lambda(k, lambda);
  detail::require(grid >= 1 && truncation >= 1, "grid and truncation must be >= 1");
  detail::require(grid <= (std::uint64_t{1} << 40), "grid too large");
  if (static_cast<double>(grid) * static_cast<double>(truncation) > kMaxGridWork) {
    throw BudgetExceeded("multiplier_magnitudes: grid * truncation exceeds budget");
  }
  // theta_i = (2i + 1) / (2M); n^k theta_i mod 1 is carried exactly mod 2M.
  const std::uint64_t mod = 2 * grid;
  std::vector<std::uint64_t> residue(truncation + 1);
  std::vector<double> weight(truncation + 1);
  for (std::uint64_t n = 1; n <= truncation; ++n) {
    residue[n] = pow_mod(n, k, mod);
    weight[n] = std::pow(static_cast<double>(n), -lambda);
  }
  std::vector<double> out(grid);
  parallel_for(grid, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const std::uint64_t odd = 2 * i + 1;
      CompensatedSum<Complex> sum;
      for (std::uint64_t n = 1; n <= truncation; ++n) {
        const auto num = static_cast<std::uint64_t>(static_cast<unsigned __int128>(residue[n]) * odd % mod);
        sum.add(weight[n] * unit_phase(-static_cast<double>(num) / static_cast<double>(mod)));
      }
      out[i] = std::abs(sum.value());
    }
  });
  return out;
}

NormProfile norm_profile(int k, double lambda, std::uint64_t grid, std::uint64_t truncation,
                         std::span<const double> exponents) {
  detail::require(lambda < 1.0, "lambda must be < 1");
  const auto mags = multiplier_magnitudes(k, lambda, grid, truncation);
  NormProfile out = profile_from_samples(mags, exponents, k / (1.0 - lambda));
  out.k = k;
  out.lambda = lambda;
  out.truncation = truncation;
  return out;
}

}  // namespace weyllab
