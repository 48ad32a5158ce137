#include "weyllab/circle_method.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "weyllab/error.hpp"
#include "weyllab/exact.hpp"

namespace weyllab {
namespace {

using u128 = unsigned __int128;

std::uint64_t floor_bound(double x) {
  if (!(x >= 1.0)) {
    return 0;
  }
  if (x >= 0x1p62) {
    return std::uint64_t{1} << 62;
  }
  return static_cast<std::uint64_t>(std::floor(x));
}

double circular_distance(double theta, const Convergent& c) {
  const Rational diff = exact_rational(theta) - Rational(BigInt(c.p), BigInt(c.q));
  return to_double(boost::multiprecision::abs(diff));
}

}  // namespace

ArcParameters ArcParameters::make(int k, double beta, double beta0, double beta1, double lambda,
                                  bool allow_violations) {
  detail::require(k >= 1 && k <= 64, "k must lie in [1, 64]");
  detail::require(std::isfinite(beta) && std::isfinite(beta0) && std::isfinite(beta1) &&
                      std::isfinite(lambda),
                  "arc parameters must be finite");
  ArcParameters p;
  p.k = k;
  p.beta = beta;
  p.beta0 = beta0;
  p.beta1 = beta1;
  p.lambda = lambda;
  p.exploratory = allow_violations;
  if (!allow_violations) {
    const auto v = p.violations();
    if (!v.empty()) {
      std::string what = "invalid arc parameters:";
      for (const auto& s : v) {
        what += " " + s + ";";
      }
      detail::fail_argument(what);
    }
  }
  return p;
}

ArcParameters ArcParameters::default_preset(int k, double lambda) {
  return make(k, k, std::min(1.0, lambda) - 1e-6, 1.0, lambda);
}

ArcParameters ArcParameters::stein_wainger_preset(int k, double lambda) {
  return make(k, k, 0.5, 1.0, lambda);
}

std::vector<std::string> ArcParameters::violations() const {
  std::vector<std::string> out;
  if (!(beta0 > 0.0)) out.emplace_back("beta0 > 0");
  if (!(beta1 >= 0.0)) out.emplace_back("beta1 >= 0");
  if (!(lambda > 0.0 && lambda < 1.0)) out.emplace_back("0 < lambda < 1");
  if (!(beta0 <= beta - beta1)) out.emplace_back("beta0 <= beta - beta1");
  if (!(beta0 <= 1.0)) out.emplace_back("beta0 <= 1");
  if (!(beta - beta1 >= k - 1)) out.emplace_back("beta - beta1 >= k - 1");
  if (!(lambda > beta0)) out.emplace_back("lambda > beta0");
  if (!(lambda > 0.5)) out.emplace_back("lambda > 1/2");
  return out;
}

double ArcParameters::dirichlet_scale(int j) const { return std::exp2((beta - beta1) * j); }

double ArcParameters::major_denominator_bound(int j) const { return std::exp2(beta0 * j) / 10.0; }

std::vector<Convergent> convergents(double theta, std::uint64_t q_limit) {
  detail::require(std::isfinite(theta), "theta must be finite");
  std::vector<Convergent> out;
  if (q_limit == 0) {
    return out;
  }
  const Rational r = exact_rational(theta);
  BigInt num = boost::multiprecision::numerator(r);
  BigInt den = boost::multiprecision::denominator(r);
  // Work with theta mod 1.
  BigInt fl = num / den;
  if (num < 0 && fl * den != num) {
    fl -= 1;
  }
  num -= fl * den;

  BigInt p_prev = 1, q_prev = 0, p = 0, q = 1;  // convergent of the leading term 0
  out.push_back({0, 1});
  while (num != 0) {
    // theta_i = den / num
    const BigInt a = den / num;
    const BigInt rem = den - a * num;
    const BigInt p_next = a * p + p_prev;
    const BigInt q_next = a * q + q_prev;
    if (q_next > q_limit) {
      break;
    }
    p_prev = p;
    q_prev = q;
    p = p_next;
    q = q_next;
    out.push_back({static_cast<std::uint64_t>(p), static_cast<std::uint64_t>(q)});
    den = num;
    num = rem;
  }
  return out;
}

bool within_dirichlet_radius(double theta, const Convergent& c, double Q) {
  const Rational diff =
      boost::multiprecision::abs(exact_rational(theta) - Rational(BigInt(c.p), BigInt(c.q)));
  return diff * Rational(BigInt(c.q)) * exact_rational(Q) <= Rational(1);
}

DirichletApproximation dirichlet_approx(double theta, double Q) {
  detail::require(Q >= 1.0 && std::isfinite(Q), "Dirichlet scale must be >= 1");
  const double t = theta - std::floor(theta);
  const auto cs = convergents(t, floor_bound(Q));
  const Convergent c = cs.back();
  DirichletApproximation d;
  d.convergent = c;
  d.frac = ReducedFraction::normalized(c.p, c.q);
  d.error = circular_distance(t, c);
  return d;
}

ArcDecision classify(double theta, int j, const ArcParameters& params) {
  detail::require(j >= 0 && j <= 200, "level j must lie in [0, 200]");
  detail::require(std::isfinite(theta), "theta must be finite");
  const double t = theta - std::floor(theta);
  const double Q = params.dirichlet_scale(j);
  const std::uint64_t q_major = floor_bound(params.major_denominator_bound(j));

  ArcDecision d;
  d.theta = theta;
  d.j = j;
  if (q_major >= 1) {
    for (const auto& c : convergents(t, q_major)) {
      if (within_dirichlet_radius(t, c, Q)) {
        d.kind = ArcKind::major;
        d.witness = ReducedFraction::normalized(c.p, c.q);
        d.distance = circular_distance(t, c);
        return d;
      }
    }
  }
  const auto approx = dirichlet_approx(t, std::max(Q, 1.0));
  d.kind = ArcKind::minor;
  d.witness = approx.frac;
  d.distance = approx.error;
  return d;
}

std::vector<ReducedFraction> farey_sequence(std::uint64_t order) {
  std::vector<ReducedFraction> out;
  if (order == 0) {
    return out;
  }
  // Next-term recurrence starting from 0/1, 1/order.
  std::uint64_t a = 0, b = 1, c = 1, d = order;
  while (c <= order) {
    out.emplace_back(c, d);
    if (c == d) {
      break;
    }
    const std::uint64_t m = (order + b) / d;
    const std::uint64_t nc = m * c - a;
    const std::uint64_t nd = m * d - b;
    a = c;
    b = d;
    c = nc;
    d = nd;
  }
  return out;
}

std::vector<MajorArc> enumerate_major_arcs(int j, const ArcParameters& params) {
  detail::require(j >= 0 && j <= 200, "level j must lie in [0, 200]");
  const std::uint64_t q_major = floor_bound(params.major_denominator_bound(j));
  if (q_major == 0) {
    return {};
  }
  // |F_n| ~ 3 n^2 / pi^2.
  const long double estimate = 0.3040l * static_cast<long double>(q_major) * q_major;
  if (estimate > static_cast<long double>(kMaxMajorArcs)) {
    throw BudgetExceeded("major-arc enumeration exceeds the arc budget");
  }
  const double Q = params.dirichlet_scale(j);
  std::vector<MajorArc> arcs;
  for (const auto& f : farey_sequence(q_major)) {
    arcs.push_back({j, f, f.value(), 1.0 / (static_cast<double>(f.q()) * Q)});
  }
  return arcs;
}

std::optional<std::pair<MajorArc, MajorArc>> find_arc_overlap(std::span<const MajorArc> arcs,
                                                              const ArcParameters& params) {
  if (arcs.size() < 2) {
    return std::nullopt;
  }
  // Adjacent closed arcs a1/q1 < a2/q2 with radii 1/(q Q) meet iff det * Q <= q1 + q2.
  const int j = arcs.front().j;
  const Rational Q = exact_rational(params.dirichlet_scale(j));
  auto overlaps = [&](std::uint64_t a1, std::uint64_t q1, const BigInt& a2, std::uint64_t q2) {
    const BigInt det = a2 * q1 - BigInt(a1) * q2;
    return Rational(det) * Q <= Rational(BigInt(q1) + q2);
  };
  for (std::size_t i = 0; i + 1 < arcs.size(); ++i) {
    const auto& x = arcs[i].frac;
    const auto& y = arcs[i + 1].frac;
    if (overlaps(x.a(), x.q(), BigInt(y.a()), y.q())) {
      return std::make_pair(arcs[i], arcs[i + 1]);
    }
  }
  const auto& last = arcs.back().frac;
  const auto& first = arcs.front().frac;
  if (overlaps(last.a(), last.q(), BigInt(first.a()) + first.q(), first.q())) {
    return std::make_pair(arcs.back(), arcs.front());
  }
  return std::nullopt;
}

double total_arc_measure(std::span<const MajorArc> arcs) {
  double total = 0.0;
  for (const auto& a : arcs) {
    total += 2.0 * a.radius;
  }
  return total;
}

MStarAudit mstar_disjointness_audit(std::uint64_t q_max, BandScope scope) {
  detail::require(q_max >= 1 && q_max <= 4096, "q_max must lie in [1, 4096]");
  MStarAudit audit;

  auto check_group = [&](std::vector<ReducedFraction> fr) {
    if (fr.size() < 2 || !audit.pass) {
      return;
    }
    std::sort(fr.begin(), fr.end(), [](const ReducedFraction& x, const ReducedFraction& y) {
      return static_cast<u128>(x.a()) * y.q() < static_cast<u128>(y.a()) * x.q();
    });
    // Radii 1/(10 q^2): adjacent arcs are disjoint iff 10 q1 q2 det > q1^2 + q2^2.
    auto disjoint = [](std::uint64_t a1, std::uint64_t q1, std::uint64_t a2, std::uint64_t q2) {
      const u128 det = static_cast<u128>(a2) * q1 - static_cast<u128>(a1) * q2;
      const u128 lhs = 10 * static_cast<u128>(q1) * q2 * det;
      const u128 rhs = static_cast<u128>(q1) * q1 + static_cast<u128>(q2) * q2;
      return lhs > rhs;
    };
    for (std::size_t i = 0; i + 1 < fr.size(); ++i) {
      ++audit.pairs_checked;
      if (!disjoint(fr[i].a(), fr[i].q(), fr[i + 1].a(), fr[i + 1].q())) {
        audit.pass = false;
        audit.counterexample = std::make_pair(fr[i], fr[i + 1]);
        return;
      }
    }
    ++audit.pairs_checked;
    const auto& last = fr.back();
    const auto& first = fr.front();
    if (!disjoint(last.a(), last.q(), first.a() + first.q(), first.q())) {
      audit.pass = false;
      audit.counterexample = std::make_pair(last, first);
    }
  };

  auto fractions_with = [](std::uint64_t q_lo, std::uint64_t q_hi) {
    std::vector<ReducedFraction> out;
    for (std::uint64_t q = q_lo; q <= q_hi; ++q) {
      for (std::uint64_t a = 1; a <= q; ++a) {
        if (std::gcd(a, q) == 1) {
          out.emplace_back(a, q);
        }
      }
    }
    return out;
  };

  if (scope == BandScope::all_pairs) {
    check_group(fractions_with(1, q_max));
    return audit;
  }
  for (std::uint64_t lo = 1; lo <= q_max; lo *= 2) {
    check_group(fractions_with(lo, std::min(q_max, 2 * lo - 1)));
  }
  return audit;
}

}  // namespace weyllab
