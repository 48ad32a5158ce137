#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "weyllab/frequency.hpp"

namespace weyllab {

/// Complete Weyl sum S(a/q) = sum_{l=1}^{q} e^{2 pi i l^k a / q}.
Complex weyl_sum_complete(const ReducedFraction& frac, int k);

struct WeylAuditRow {
  std::uint64_t q = 0;
  std::uint64_t a = 0;
  double magnitude = 0.0;  // |S(a/q)|
  double ratio = 0.0;      // |S(a/q)| / q^{1 - 1/k}
};

struct ClassicalBoundAudit {
  int k = 1;
  std::uint64_t q_max = 2;
  std::vector<WeylAuditRow> rows;          // every reduced a/q with q <= q_max
  std::vector<WeylAuditRow> per_q_maxima;  // row attaining max_a ratio for each q
  double max_ratio = 0.0;
};

/// Ratios |S(a/q)| / q^{1-1/k} over all reduced fractions with q <= q_max.
ClassicalBoundAudit classical_bound_audit(int k, std::uint64_t q_max);

/// S_N(theta) = sum_{M <= n < M + N} e^{-2 pi i n^k theta}.
Complex partial_weyl_sum(int k, const Frequency& theta, std::uint64_t M, std::uint64_t N);

/// S_{k,X}(alpha) = sum_{n=1}^{X} e^{2 pi i n^k alpha}.
Complex weyl_sum_box(int k, const Frequency& alpha, std::uint64_t X);

/// Largest number of sample points mean_value_quadrature will evaluate.
inline constexpr std::uint64_t kMaxQuadratureSamples = std::uint64_t{1} << 24;

/// int_0^1 |S_{k,X}(alpha)|^{2s} d alpha, computed exactly as an equally spaced average.
double mean_value_quadrature(int s, int k, std::uint64_t X);

/// eta(s, k) ~ k^2 exp(-2 s / k^2). This is the stated approximation of the
/// best Vinogradov exponent, not a rigorous bound.
double eta_bound(double s, int k);

struct ExponentReport {
  int k = 2;
  double beta0 = 1.0;
  int window = 0;  // s and t range over 1..window
  double sigma1 = 0.0;
  double sigma2 = 0.0;
  int sigma2_argmax = 0;
  /// Value of the sigma2 objective at s = 2 (k-1)^2 log(k-1), which reduces
  /// to (beta0 - (k-1)^{-2}) / (4 (k-1)^2 log(k-1)). Only for k >= 3.
  std::optional<double> sigma2_simplified;
  /// Only evaluated when beta0 > 1 - 1/k.
  std::optional<double> sigma3;
  std::optional<int> sigma3_r;
  double sigma_max = 0.0;
  bool eta_is_approximation = true;
};

/// Weyl, Vinogradov and refined-Vinogradov exponents for a minor-arc sum.
/// Maximizations over s, t use the integer window 1..ceil(8 k^2 log k).
ExponentReport sigma_report(int k, double beta0);

}  // namespace weyllab
