#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "doctest.h"
#include "support.hpp"
#include "weyllab/circle_method.hpp"
#include "weyllab/error.hpp"

using namespace weyllab;

namespace {

using u128 = unsigned __int128;

std::uint64_t totient(std::uint64_t q) {
  std::uint64_t c = 0;
  for (std::uint64_t a = 1; a <= q; ++a) c += std::gcd(a, q) == 1;
  return c;
}

// Closed arcs |theta - a/q| <= 1/(10 q^2) intersect on the circle.
bool mstar_intersect(std::uint64_t a1, std::uint64_t q1, std::uint64_t a2, std::uint64_t q2) {
  // circular distance numerator over q1 q2
  const std::int64_t den = static_cast<std::int64_t>(q1 * q2);
  const std::int64_t num = std::llabs(static_cast<std::int64_t>(a1 * q2) - static_cast<std::int64_t>(a2 * q1)) % den;
  const std::int64_t dist = std::min(num, den - num);
  // dist / den <= 1/(10 q1^2) + 1/(10 q2^2)
  return static_cast<u128>(10) * dist * q1 * q2 <= static_cast<u128>(q1) * q1 + static_cast<u128>(q2) * q2;
}

}  // namespace

TEST_SUITE("circle_method") {

TEST_CASE("parameter constraints") {
  CHECK_NOTHROW(ArcParameters::default_preset(3, 0.9));
  CHECK_NOTHROW(ArcParameters::stein_wainger_preset(3, 0.9));
  CHECK_THROWS_AS(ArcParameters::make(3, 3, 0.95, 1, 0.9), InvalidArgument);  // lambda <= beta0
  CHECK_THROWS_AS(ArcParameters::make(3, 2, 0.5, 1, 0.9), InvalidArgument);   // beta - beta1 < k - 1
  CHECK_THROWS_AS(ArcParameters::make(3, 3, 0.4, 1, 0.45), InvalidArgument);  // lambda <= 1/2
  const auto loose = ArcParameters::make(3, 3, 1.5, 1, 0.9, true);
  CHECK(loose.exploratory);
  CHECK(loose.violations().size() == 2);
  const auto d = ArcParameters::default_preset(2, 0.7);
  CHECK(d.beta0 == doctest::Approx(0.7 - 1e-6));
  CHECK(d.dirichlet_scale(5) == 32.0);
}

TEST_CASE("Dirichlet approximation examples") {
  const auto a = dirichlet_approx(0.3, 10);
  CHECK(a.frac == ReducedFraction(3, 10));
  CHECK(a.error < 1e-16);
  const auto b = dirichlet_approx(std::numbers::pi - 3, 10);
  CHECK(b.frac == ReducedFraction(1, 7));
  CHECK(b.error == doctest::Approx(1.2644892673496777e-3).epsilon(1e-9));
  CHECK(dirichlet_approx(0.0, 5).frac == ReducedFraction(1, 1));
  CHECK(dirichlet_approx(1.0, 5).frac == ReducedFraction(1, 1));
}

TEST_CASE("Dirichlet inequality and best approximation on random inputs") {
  auto gen = testing::rng(20);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 10000; ++trial) {
    const double theta = unit(gen);
    const double Q = 1.0 + std::ldexp(unit(gen), static_cast<int>(gen() % 30));
    const auto d = dirichlet_approx(theta, Q);
    CHECK(d.convergent.q <= Q);
    CHECK(within_dirichlet_radius(theta, d.convergent, Q));
    if (trial % 10 == 0 && Q < 200) {
      // exhaustive search: nothing with a smaller denominator is closer
      for (std::uint64_t q = 1; q < d.convergent.q; ++q) {
        const double a = std::round(theta * q);
        CHECK(std::abs(theta - a / q) >= d.error * (1 - 1e-12));
      }
    }
  }
}

TEST_CASE("classification examples") {
  const auto params = ArcParameters::default_preset(2, 0.9);
  const auto major = classify(3.0 / 7.0, 30, params);
  CHECK(major.kind == ArcKind::major);
  CHECK(major.witness == ReducedFraction(3, 7));
  const double golden = (std::sqrt(5.0) - 1) / 2;
  for (int j = 0; j <= 40; ++j) CHECK(classify(golden, j, params).kind == ArcKind::minor);
  CHECK(classify(0.5, 0, params).kind == ArcKind::minor);
  // near 0 and near 1 both belong to the arc around 1/1
  CHECK(classify(1e-12, 20, params).witness == ReducedFraction(1, 1));
  CHECK(classify(1 - 1e-12, 20, params).kind == ArcKind::major);
}

TEST_CASE("major decisions satisfy the arc definition") {
  auto gen = testing::rng(21);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto params = ArcParameters::default_preset(3, 0.8);
  int majors = 0;
  for (int trial = 0; trial < 5000; ++trial) {
    const int j = static_cast<int>(gen() % 25);
    // bias toward rationals with small denominators
    const std::uint64_t q = 1 + gen() % 40;
    const double theta = trial % 2 ? unit(gen) : (gen() % q + 1) / static_cast<double>(q) + std::ldexp(unit(gen) - 0.5, -3 * j);
    const auto d = classify(theta - std::floor(theta), j, params);
    if (d.kind == ArcKind::major) {
      ++majors;
      CHECK(d.witness.q() <= params.major_denominator_bound(j));
      CHECK(d.distance <= 1.0 / (d.witness.q() * params.dirichlet_scale(j)) * (1 + 1e-12));
    }
  }
  CHECK(majors > 100);
}

TEST_CASE("larger radius never turns major into minor") {
  auto gen = testing::rng(22);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto narrow = ArcParameters::make(3, 3.0, 0.7, 1.0, 0.8);
  const auto wide = ArcParameters::make(3, 3.0, 0.7, 1.2, 0.8, true);
  for (int trial = 0; trial < 4000; ++trial) {
    const int j = 5 + static_cast<int>(gen() % 20);
    const std::uint64_t q = 1 + gen() % 30;
    const double theta = (gen() % q + 1) / static_cast<double>(q) + std::ldexp(unit(gen) - 0.5, -2 * j);
    const double t = theta - std::floor(theta);
    if (classify(t, j, narrow).kind == ArcKind::major) CHECK(classify(t, j, wide).kind == ArcKind::major);
  }
}

TEST_CASE("Farey sequence") {
  const auto f5 = farey_sequence(5);
  REQUIRE(f5.size() == 10);
  CHECK(f5.front() == ReducedFraction(1, 5));
  CHECK(f5[3] == ReducedFraction(2, 5));
  CHECK(f5.back() == ReducedFraction(1, 1));
  std::uint64_t expected = 0;
  for (std::uint64_t q = 1; q <= 60; ++q) expected += totient(q);
  CHECK(farey_sequence(60).size() == expected);
}

TEST_CASE("major arc enumeration") {
  const auto params = ArcParameters::default_preset(2, 0.9);
  CHECK(enumerate_major_arcs(0, params).empty());
  CHECK(enumerate_major_arcs(3, params).empty());
  for (int j : {5, 8, 11, 14}) {
    const auto arcs = enumerate_major_arcs(j, params);
    const auto q_max = static_cast<std::uint64_t>(std::floor(params.major_denominator_bound(j)));
    double expected = 0;
    for (std::uint64_t q = 1; q <= q_max; ++q) expected += totient(q) * 2.0 / (q * params.dirichlet_scale(j));
    CHECK(total_arc_measure(arcs) == doctest::Approx(expected).epsilon(1e-12));
    CHECK_FALSE(find_arc_overlap(arcs, params).has_value());
    for (std::size_t i = 1; i < arcs.size(); ++i) CHECK(arcs[i - 1].center < arcs[i].center);
  }
}

TEST_CASE("overlap detection finds a real overlap") {
  const auto loose = ArcParameters::make(2, 2.0, 1.0, 1.6, 0.9, true);
  const auto arcs = enumerate_major_arcs(12, loose);
  const auto hit = find_arc_overlap(arcs, loose);
  REQUIRE(hit.has_value());
  double gap = std::abs(hit->first.center - hit->second.center);
  gap = std::min(gap, 1 - gap);
  CHECK(gap <= hit->first.radius + hit->second.radius);
}

TEST_CASE("same-band M* arcs are disjoint") {
  CHECK(mstar_disjointness_audit(2).pass);
  CHECK(mstar_disjointness_audit(64).pass);
  for (std::uint64_t q_max = 2; q_max <= 256; q_max += 17) CHECK(mstar_disjointness_audit(q_max).pass);
  CHECK(mstar_disjointness_audit(256).pass);
  // exhaustive pairwise oracle for q <= 64
  bool any = false;
  for (std::uint64_t lo = 1; lo <= 32; lo *= 2)
    for (std::uint64_t q1 = lo; q1 < 2 * lo; ++q1)
      for (std::uint64_t q2 = q1; q2 < 2 * lo; ++q2)
        for (std::uint64_t a1 = 1; a1 <= q1; ++a1)
          for (std::uint64_t a2 = 1; a2 <= q2; ++a2) {
            if (std::gcd(a1, q1) != 1 || std::gcd(a2, q2) != 1 || (a1 == a2 && q1 == q2)) continue;
            any = any || mstar_intersect(a1, q1, a2, q2);
          }
  CHECK_FALSE(any);
}

TEST_CASE("cross-band M* arcs can overlap") {
  const auto audit = mstar_disjointness_audit(10, BandScope::all_pairs);
  CHECK_FALSE(audit.pass);
  REQUIRE(audit.counterexample.has_value());
  const auto& [x, y] = *audit.counterexample;
  CHECK(mstar_intersect(x.a(), x.q(), y.a(), y.q()));
}

}  // TEST_SUITE
