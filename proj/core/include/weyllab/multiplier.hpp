#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "weyllab/circle_method.hpp"
#include "weyllab/frequency.hpp"

namespace weyllab {

struct MultiplierSample {
  double theta = 0.0;
  std::uint64_t truncation = 0;
  Complex value;
  /// Trivial bound on the next dyadic block, sum_{N < n <= 2N} n^{-lambda} <= N^{1-lambda}.
  /// The full tail converges only conditionally, so no absolute bound exists.
  double tail_bound = 0.0;
};

/// m_{k,lambda}(theta) truncated to n <= N: sum e^{-2 pi i n^k theta} n^{-lambda}.
MultiplierSample multiplier_truncated(int k, double lambda, const Frequency& theta, std::uint64_t N);

/// sum_{2^j <= n < 2^{j+1}} e^{-2 pi i n^k theta} n^{-lambda}.
Complex dyadic_block(int k, double lambda, const Frequency& theta, int j);

/// Phi(u) = int_1^2 e^{2 pi i y^k u} y^{-lambda} dy.
///
/// Gauss-Legendre panels, with the panel count proportional to the number of
/// oscillations |u| (2^k - 1) of the phase on [1, 2].
Complex phi_integral(int k, double lambda, double u);

struct MajorArcApproximation {
  Complex approx;
  Complex actual;
  double error = 0.0;
  /// False when a/q + alpha lies outside M_j(a/q) for the given parameters.
  bool inside_major_arc = true;
};

/// Compares a dyadic block at theta = a/q + alpha with its major-arc main term.
///
/// The block uses the e^{-2 pi i n^k theta} convention, so the main term is the
/// complex conjugate of q^{-1} S(a/q) 2^{j(1-lambda)} Phi(2^{jk} alpha).
MajorArcApproximation major_arc_approximation(int k, double lambda, const ReducedFraction& frac,
                                              double alpha, int j, const ArcParameters& params);
MajorArcApproximation major_arc_approximation(int k, double lambda, const ReducedFraction& frac,
                                              double alpha, int j);

/// S_y(theta) = sum_n e^{-pi n^k y} e^{-2 pi i n^k theta}, extended until e^{-pi n^k y} < 1e-16.
Complex theta_kernel(int k, double y, const Frequency& theta, std::uint64_t N = 0);

/// Number of terms theta_kernel uses for (k, y) when no explicit N is requested.
std::uint64_t theta_kernel_terms(int k, double y);

struct ThetaParseval {
  std::uint64_t terms = 0;
  double integral = 0.0;  // int_0^1 |S_y|^{2s} by band-limited sampling
  double series = 0.0;    // sum_l r(l)^2 e^{-2 pi l y}
};

/// Both sides of the Parseval identity for the theta kernel.
ThetaParseval theta_parseval(int s, int k, double y);

struct MellinCheck {
  double lhs = 0.0;  // n^{-lambda}
  double rhs = 0.0;  // pi^{lambda/k} / Gamma(lambda/k) * int_0^inf e^{-pi n^k y} y^{lambda/k - 1} dy
};

MellinCheck mellin_identity_check(int k, double lambda, std::uint64_t n);

struct CoefficientBoundRow {
  std::uint64_t l = 0;
  double coefficient = 0.0;  // a_l of (1 + sum n^{-lambda} x^{n^k})^s
  std::uint64_t representations = 0;
  double lower_bound = 0.0;  // r_{s,k}(l) l^{-s lambda / k}
  bool holds = true;
};

/// a_l >= r_{s,k}(l) l^{-s lambda/k} for 1 <= l <= L.
std::vector<CoefficientBoundRow> coefficient_bound_audit(int s, int k, double lambda, std::uint64_t L);

struct LuEstimate {
  double u = 0.0;
  double estimate = 0.0;
};

struct ThresholdMeasure {
  double alpha = 0.0;
  double measure = 0.0;  // (1/M) #{i : |m(theta_i)| > alpha}
};

struct DistributionProfile {
  std::uint64_t grid = 0;
  double r = 0.0;
  std::vector<ThresholdMeasure> thresholds;
  /// sup_alpha alpha * Lambda(alpha)^{1/r}, taken over every sample value.
  double weak_lr = 0.0;
};

struct NormProfile {
  int k = 0;
  double lambda = 0.0;
  std::uint64_t truncation = 0;
  std::uint64_t grid = 0;
  std::vector<LuEstimate> lu;
  DistributionProfile distribution;
};

/// Discrete L^u norms ((1/M) sum |v_i|^u)^{1/u}.
double discrete_lu_norm(std::span<const double> magnitudes, double u);

/// Distribution function at log-spaced thresholds plus the weak-L^r functional.
DistributionProfile distribution_profile(std::span<const double> magnitudes, double r,
                                         std::size_t threshold_count = 48);

/// Norm estimates for arbitrary sampled magnitudes (the calibration hook).
NormProfile profile_from_samples(std::span<const double> magnitudes, std::span<const double> exponents,
                                 double r);

/// Samples |m_{k,lambda}| on the midpoint grid (i + 1/2)/M and reports L^u
/// estimates, the distribution function and the weak-L^r functional with r = k/(1 - lambda).
NormProfile norm_profile(int k, double lambda, std::uint64_t grid, std::uint64_t truncation,
                         std::span<const double> exponents);

/// |m| on the midpoint grid, truncated to n <= truncation.
std::vector<double> multiplier_magnitudes(int k, double lambda, std::uint64_t grid,
                                          std::uint64_t truncation);

}  // namespace weyllab
