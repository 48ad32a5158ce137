#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "weyllab/frequency.hpp"

namespace weyllab {

/// Major/minor arc configuration for dyadic level j: Dirichlet scale
/// 2^{(beta - beta1) j}, major-arc denominators q <= 2^{beta0 j} / 10.
struct ArcParameters {
  int k = 2;
  double beta = 2.0;
  double beta0 = 0.5;
  double beta1 = 1.0;
  double lambda = 0.75;
  /// Set when constructed with allow_violations; the constraint list is kept for reporting.
  bool exploratory = false;

  /// Validates beta0 <= beta - beta1, beta0 <= 1, beta - beta1 >= k - 1,
  /// lambda > beta0 and lambda > 1/2 (plus basic ranges) unless allow_violations.
  static ArcParameters make(int k, double beta, double beta0, double beta1, double lambda,
                            bool allow_violations = false);
  /// beta = k, beta1 = 1, beta0 = min(1, lambda) - 1e-6.
  static ArcParameters default_preset(int k, double lambda);
  /// beta = k, beta1 = 1, beta0 = 1/2.
  static ArcParameters stein_wainger_preset(int k, double lambda);

  /// Human-readable list of violated constraints (empty when valid).
  std::vector<std::string> violations() const;

  double dirichlet_scale(int j) const;     // 2^{(beta - beta1) j}
  double major_denominator_bound(int j) const;  // 2^{beta0 j} / 10
};

struct Convergent {
  std::uint64_t p = 0;
  std::uint64_t q = 1;
};

/// Continued-fraction convergents of theta (as the exact dyadic rational it
/// encodes) with denominators up to q_limit.
std::vector<Convergent> convergents(double theta, std::uint64_t q_limit);

struct DirichletApproximation {
  ReducedFraction frac{1, 1};
  Convergent convergent;  // raw p/q, p may be 0
  double error = 0.0;     // |theta - p/q|
};

/// Last convergent p/q of theta with q <= Q. It satisfies |theta - p/q| <= 1/(q Q).
/// A convergent 0/1 is reported as the fraction 1/1 (theta is read mod 1).
DirichletApproximation dirichlet_approx(double theta, double Q);

/// True when |theta - p/q| <= 1 / (q Q), decided in exact rational arithmetic.
bool within_dirichlet_radius(double theta, const Convergent& c, double Q);

enum class ArcKind { major, minor };

struct ArcDecision {
  double theta = 0.0;
  int j = 0;
  ArcKind kind = ArcKind::minor;
  ReducedFraction witness{1, 1};
  double distance = 0.0;
};

/// Major iff theta lies in M_j(a/q) for some reduced a/q with q <= 2^{beta0 j}/10.
/// Any such a/q is a convergent of theta, so the convergents are scanned; the
/// witness of a minor decision is the Dirichlet approximation at scale 2^{(beta-beta1) j}.
ArcDecision classify(double theta, int j, const ArcParameters& params);

struct MajorArc {
  int j = 0;
  ReducedFraction frac{1, 1};
  double center = 1.0;
  double radius = 0.0;
};

/// Farey sequence of the given order restricted to (0, 1], ascending.
std::vector<ReducedFraction> farey_sequence(std::uint64_t order);

inline constexpr std::uint64_t kMaxMajorArcs = 10'000'000;

/// Every M_j(a/q), Farey-ordered. Empty when 2^{beta0 j}/10 < 1.
std::vector<MajorArc> enumerate_major_arcs(int j, const ArcParameters& params);

/// Exact pairwise-disjointness check of enumerated arcs on the circle R/Z.
/// On failure returns the first overlapping pair.
std::optional<std::pair<MajorArc, MajorArc>> find_arc_overlap(std::span<const MajorArc> arcs,
                                                              const ArcParameters& params);

/// Sum of arc lengths 2 * radius.
double total_arc_measure(std::span<const MajorArc> arcs);

enum class BandScope { same_band, all_pairs };

struct MStarAudit {
  bool pass = true;
  std::optional<std::pair<ReducedFraction, ReducedFraction>> counterexample;
  std::uint64_t pairs_checked = 0;
};

/// Disjointness of the j-independent arcs |theta - a/q| <= 1/(10 q^2), q <= q_max,
/// among fractions whose denominators share a dyadic band [2^s, 2^{s+1}) (or all pairs).
MStarAudit mstar_disjointness_audit(std::uint64_t q_max, BandScope scope = BandScope::same_band);

}  // namespace weyllab
