#include "weyllab/regions.hpp"

#include <array>
#include <cmath>

#include "weyllab/error.hpp"
#include "weyllab/exponential_sums.hpp"

namespace weyllab {
namespace {

constexpr std::array<std::pair<int, std::uint64_t>, 7> kGTilde{
    {{3, 8}, {4, 16}, {5, 32}, {6, 56}, {7, 112}, {8, 224}, {9, 393}}};

Rational one() { return Rational(1); }

struct Builder {
  RegionResult result;

  void add(std::string name, bool ok, double margin) {
    if (!ok) result.binding.push_back(name);
    result.constraints.push_back({std::move(name), ok, margin});
  }
  // 1/q < lambda and 1/p > 1 - lambda.
  void box(const RegionQuery& q) {
    add("1/q < lambda", q.inv_q < q.lambda, q.lambda - q.inv_q);
    add("1/p > 1 - lambda", q.inv_p > 1.0 - q.lambda, q.inv_p - (1.0 - q.lambda));
  }
  void diagonal(const RegionQuery& q, double slope, bool strict, const std::string& name) {
    const double rhs = q.inv_p - (1.0 - q.lambda) * slope;
    add(name, strict ? q.inv_q < rhs : q.inv_q <= rhs, rhs - q.inv_q);
  }
  void exact_gate(const RegionQuery& q, const Rational& gate, const std::string& name) {
    result.lambda_gate = to_double(gate);
    result.lambda_gate_exact = gate;
    add(name, exact_rational(q.lambda) > gate, q.lambda - result.lambda_gate);
  }
  void gate(const RegionQuery& q, double value, const std::string& name) {
    result.lambda_gate = value;
    add(name, q.lambda > value, q.lambda - value);
  }
};

}  // namespace

std::string_view to_string(Statement which) {
  switch (which) {
    case Statement::conjecture: return "conjecture";
    case Statement::theorem1: return "thm1";
    case Statement::theorem2: return "thm2";
    case Statement::theorem3: return "thm3";
    case Statement::theorem4: return "thm4";
  }
  return "unknown";
}

std::optional<Statement> parse_statement(std::string_view name) {
  for (auto s : {Statement::conjecture, Statement::theorem1, Statement::theorem2, Statement::theorem3,
                 Statement::theorem4}) {
    if (name == to_string(s)) return s;
  }
  return std::nullopt;
}

Rational lambda1(int k) {
  detail::require(k >= 1 && k <= 62, "k must lie in [1, 62]");
  return one() - Rational(BigInt(1), (BigInt(1) << (k - 1)) + 1);
}

double lambda2(int k) {
  detail::require(k >= 2, "k must be >= 2");
  const double km1 = k - 1.0;
  return 1.0 - (1.0 - 1.0 / (km1 * km1)) / (4.0 * km1 * km1 * std::log(km1) + 1.0);
}

double lambda3_numeric(int k) {
  detail::require(k >= 2, "k must be >= 2");
  return 1.0 - *sigma_report(k, 1.0).sigma3;
}

double lambda3_asymptotic(int k) {
  detail::require(k >= 2, "k must be >= 2");
  return 1.0 - 1.0 / (1.5 * k * k * std::log(static_cast<double>(k)));
}

Rational lambda_star(int k) {
  detail::require(k >= 1, "k must be >= 1");
  return one() - Rational(k, 2 * k - 1);
}

int dyadic_exponent(int k) {
  detail::require(k >= 1, "k must be >= 1");
  int s = 0;
  while ((2LL << s) <= k) ++s;
  return s;
}

Rational delta_k(int k) {
  const int s = dyadic_exponent(k);
  const BigInt two_s = BigInt(1) << s;
  return Rational(BigInt(k) + two_s * s, two_s * k);
}

Rational theorem3_gate(int k) { return one() - delta_k(k) / 2; }

std::optional<std::uint64_t> g_tilde_table(int k) {
  for (const auto& [kk, g] : kGTilde) {
    if (kk == k) return g;
  }
  return std::nullopt;
}

std::uint64_t g_tilde(int k, bool asymptotic) {
  if (auto g = g_tilde_table(k)) return *g;
  if (!asymptotic) {
    detail::fail_argument("G~(k) is tabulated only for 3 <= k <= 9; enable the asymptotic mode");
  }
  detail::require(k >= 2, "k must be >= 2");
  const double kk = k;
  return static_cast<std::uint64_t>(std::ceil(kk * kk * (std::log(kk) + std::log(std::log(kk)))));
}

Rational theorem4_gate(int k, bool asymptotic) {
  return one() - Rational(BigInt(k), BigInt(2) * g_tilde(k, asymptotic));
}

int theorem2_s(int k) {
  detail::require(k >= 3, "the small-s statement needs k >= 3");
  if (k < 16) return 2;
  const double lk = std::log(static_cast<double>(k));
  return std::max(2, static_cast<int>(std::floor(0.25 * lk / std::log(lk))));
}

RegionResult region_predicate(Statement which, const RegionQuery& q, const RegionOptions& options) {
  detail::require(q.k >= 1, "k must be >= 1");
  detail::require(q.lambda > 0.0 && q.lambda < 1.0, "lambda must lie in (0, 1)");
  detail::require(q.inv_p >= 0.0 && q.inv_p <= 1.0 && q.inv_q >= 0.0 && q.inv_q <= 1.0,
                  "1/p and 1/q must lie in [0, 1]");
  Builder b;
  b.result.statement = which;
  const double k = q.k;
  switch (which) {
    case Statement::conjecture:
      b.diagonal(q, 1.0 / k, false, "(i) 1/q <= 1/p - (1-lambda)/k");
      b.box(q);
      break;
    case Statement::theorem1: {
      detail::require(q.k >= 2, "theorem 1 needs k >= 2");
      const Rational l1 = lambda1(q.k);
      const double l2 = lambda2(q.k);
      const double l3 = lambda3_numeric(q.k);
      const double d1 = to_double(l1);
      if (d1 <= l2 && d1 <= l3) {
        b.exact_gate(q, l1, "lambda > lambda_k");
      } else {
        b.gate(q, std::min(l2, l3), "lambda > lambda_k");
        b.result.note = "gate from the numeric exponent report";
      }
      b.diagonal(q, 1.0 / k, false, "(i) 1/q <= 1/p - (1-lambda)/k");
      b.box(q);
      break;
    }
    case Statement::theorem2: {
      if (q.k < 3) {
        b.add("k >= 3", false, q.k - 3.0);
        break;
      }
      const int s = options.s_k.value_or(theorem2_s(q.k));
      detail::require(s >= 1, "s_k must be >= 1");
      b.exact_gate(q, Rational(1, 2), "lambda > 1/2");
      b.diagonal(q, 1.0 / s, true, "(i-a) 1/q < 1/p - (1-lambda)/s_k");
      b.box(q);
      b.result.note = "s_k = " + std::to_string(s) + (options.s_k ? " (override)" : " (default choice)");
      break;
    }
    case Statement::theorem3: {
      detail::require(q.k >= 2, "theorem 3 needs k >= 2");
      const Rational gate = theorem3_gate(q.k);
      b.exact_gate(q, gate, "lambda > lambda_k");
      // 2k (1 - lambda_k) = k delta_k.
      const double width = to_double(Rational(q.k) * delta_k(q.k));
      b.diagonal(q, 1.0 / width, true, "(i-b) 1/q < 1/p - (1-lambda)/(2k(1-lambda_k))");
      b.box(q);
      break;
    }
    case Statement::theorem4: {
      detail::require(q.k >= 2, "theorem 4 needs k >= 2");
      const bool tabulated = g_tilde_table(q.k).has_value();
      b.exact_gate(q, theorem4_gate(q.k, options.asymptotic_g_tilde), "lambda > lambda_k");
      b.diagonal(q, 1.0 / k, true, "(i-c) 1/q < 1/p - (1-lambda)/k");
      b.box(q);
      if (!tabulated) b.result.note = "G~(k) from the asymptotic formula";
      break;
    }
  }
  b.result.inside = b.result.binding.empty();
  return b.result;
}

ThresholdCatalogue threshold_catalogue(int k_max, bool asymptotic_g_tilde) {
  detail::require(k_max >= 2 && k_max <= 60, "k_max must lie in [2, 60]");
  ThresholdCatalogue cat;
  cat.k_max = k_max;
  for (int k = 2; k <= k_max; ++k) {
    ThresholdRow row;
    row.k = k;
    row.lambda1 = lambda1(k);
    row.lambda2 = lambda2(k);
    row.lambda3 = lambda3_numeric(k);
    row.lambda3_asymptotic = lambda3_asymptotic(k);
    const double d1 = to_double(row.lambda1);
    row.theorem1_gate = d1;
    row.theorem1_source = 1;
    if (row.lambda2 < row.theorem1_gate) {
      row.theorem1_gate = row.lambda2;
      row.theorem1_source = 2;
    }
    if (row.lambda3 < row.theorem1_gate) {
      row.theorem1_gate = row.lambda3;
      row.theorem1_source = 3;
    }
    if (row.theorem1_source == 1) row.theorem1_gate_exact = row.lambda1;
    row.lambda_star = lambda_star(k);
    row.dyadic_s = dyadic_exponent(k);
    row.delta = delta_k(k);
    row.k_star_exponent = Rational(2) - row.delta;
    row.theorem3_gate = theorem3_gate(k);
    row.g_tilde = g_tilde_table(k);
    if (!row.g_tilde && asymptotic_g_tilde) {
      row.g_tilde = g_tilde(k, true);
      row.g_tilde_asymptotic = true;
    }
    if (row.g_tilde) {
      row.theorem4_gate = one() - Rational(BigInt(k), BigInt(2) * *row.g_tilde);
    }
    row.theorem2_s = k >= 3 ? theorem2_s(k) : 0;
    cat.rows.push_back(std::move(row));
  }
  return cat;
}

}  // namespace weyllab
