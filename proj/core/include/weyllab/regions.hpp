#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "weyllab/exact.hpp"

namespace weyllab {

enum class Statement { conjecture, theorem1, theorem2, theorem3, theorem4 };

std::string_view to_string(Statement which);
std::optional<Statement> parse_statement(std::string_view name);

/// (k, lambda) with the exponent pair given as (1/p, 1/q).
struct RegionQuery {
  int k = 3;
  double lambda = 0.5;
  double inv_p = 0.5;
  double inv_q = 0.5;
};

struct ConstraintCheck {
  std::string name;
  bool satisfied = false;
  /// Signed slack; positive means satisfied with room to spare.
  double margin = 0.0;
};

struct RegionOptions {
  /// Use ceil(k^2 (log k + log log k)) for G~(k) outside the table.
  bool asymptotic_g_tilde = false;
  /// Overrides the default s_k of the small-s statement.
  std::optional<int> s_k;
};

struct RegionResult {
  Statement statement = Statement::conjecture;
  bool inside = false;
  /// Lower end of the admissible lambda range (0 for the conjecture).
  double lambda_gate = 0.0;
  std::optional<Rational> lambda_gate_exact;
  std::vector<ConstraintCheck> constraints;
  /// Names of the violated constraints.
  std::vector<std::string> binding;
  /// Set when an interpretive choice (s_k, asymptotic G~) entered the answer.
  std::string note;
};

/// Evaluates the inequality set of the chosen statement. Gates with exact rational
/// values are compared exactly against the rational value of lambda.
RegionResult region_predicate(Statement which, const RegionQuery& query, const RegionOptions& options = {});

/// 1 - 1/(2^{k-1} + 1).
Rational lambda1(int k);
/// 1 - (1 - (k-1)^{-2}) / (4 (k-1)^2 log(k-1) + 1).
double lambda2(int k);
/// 1 - sigma^{(3)} with sigma^{(3)} from the exponent report at beta0 = 1.
double lambda3_numeric(int k);
/// 1 - 1/(1.5 k^2 log k), the leading-order form without the o(1) term.
double lambda3_asymptotic(int k);
/// 1 - k/(2k - 1).
Rational lambda_star(int k);
/// s with 2^s <= k < 2^{s+1}.
int dyadic_exponent(int k);
/// (k + 2^s s) / (2^s k).
Rational delta_k(int k);
/// 1 - (k + 2^s s) / (2^{s+1} k).
Rational theorem3_gate(int k);
/// Tabulated G~(k) for 3 <= k <= 9.
std::optional<std::uint64_t> g_tilde_table(int k);
/// Table value, else the asymptotic value when allowed; throws InvalidArgument otherwise.
std::uint64_t g_tilde(int k, bool asymptotic);
/// 1 - k / (2 G~(k)).
Rational theorem4_gate(int k, bool asymptotic);
/// 2 for k < 16, else max(2, floor(log k / (4 log log k))).
int theorem2_s(int k);

struct ThresholdRow {
  int k = 0;
  Rational lambda1;
  double lambda2 = 0.0;
  double lambda3 = 0.0;
  double lambda3_asymptotic = 0.0;
  /// min(lambda1, lambda2, lambda3) and which of the three attains it.
  double theorem1_gate = 0.0;
  int theorem1_source = 1;
  std::optional<Rational> theorem1_gate_exact;
  Rational lambda_star;
  int dyadic_s = 0;
  Rational delta;
  /// 2 - delta_k.
  Rational k_star_exponent;
  Rational theorem3_gate;
  std::optional<std::uint64_t> g_tilde;
  bool g_tilde_asymptotic = false;
  std::optional<Rational> theorem4_gate;
  int theorem2_s = 0;
};

struct ThresholdCatalogue {
  int k_max = 0;
  std::vector<ThresholdRow> rows;  // k = 2..k_max
};

ThresholdCatalogue threshold_catalogue(int k_max, bool asymptotic_g_tilde = false);

}  // namespace weyllab
