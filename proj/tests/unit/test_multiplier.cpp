#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "support.hpp"
#include "weyllab/arithmetic.hpp"
#include "weyllab/error.hpp"
#include "weyllab/exponential_sums.hpp"
#include "weyllab/multiplier.hpp"

using namespace weyllab;

namespace {

// Composite Simpson on a fine grid, an oracle independent of the panel rule.
Complex simpson_phi(int k, double lambda, double u, int intervals = 200000) {
  const double h = 1.0 / intervals;
  Complex sum = 0;
  for (int i = 0; i <= intervals; ++i) {
    const double y = 1.0 + i * h;
    const double w = (i == 0 || i == intervals) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    sum += w * std::polar(std::pow(y, -lambda), 2 * std::numbers::pi * std::pow(y, k) * u);
  }
  return sum * h / 3.0;
}

}  // namespace

TEST_SUITE("multiplier") {

TEST_CASE("truncated multiplier at theta = 0 is a partial zeta sum") {
  const auto m = multiplier_truncated(3, 0.7, Frequency::real(0.0), 1000);
  double expected = 0;
  for (int n = 1; n <= 1000; ++n) expected += std::pow(n, -0.7);
  CHECK(m.value.real() == doctest::Approx(expected).epsilon(1e-13));
  CHECK(std::abs(m.value.imag()) < 1e-12);
  CHECK(m.tail_bound == doctest::Approx(std::pow(1000.0, 0.3)));
}

TEST_CASE("dyadic blocks tile the truncated multiplier") {
  const Frequency f = Frequency::real(0.3183098861837907);
  Complex blocks = 0;
  for (int j = 0; j <= 9; ++j) blocks += dyadic_block(2, 0.6, f, j);
  CHECK(std::abs(blocks - multiplier_truncated(2, 0.6, f, 1023).value) < 1e-11);
}

TEST_CASE("phi integral") {
  CHECK(phi_integral(3, 0.4, 0.0).real() == doctest::Approx((std::pow(2.0, 0.6) - 1) / 0.6).epsilon(1e-14));
  for (double u : {0.3, -1.7, 12.5, 200.0}) {
    for (int k : {1, 2, 3}) {
      CHECK(std::abs(phi_integral(k, 0.8, u) - simpson_phi(k, 0.8, u)) < 1e-9);
    }
  }
  CHECK_THROWS_AS(phi_integral(3, 0.5, 1e12), BudgetExceeded);
}

TEST_CASE("major arc main term at the trivial fraction") {
  // a/q = 1/1 and alpha = 0: the main term is the integral comparison for sum n^{-lambda}.
  const auto r = major_arc_approximation(2, 0.75, ReducedFraction(1, 1), 0.0, 10);
  CHECK(r.error / std::abs(r.actual) < 1e-3);
  CHECK(r.inside_major_arc);
  const auto params = ArcParameters::default_preset(3, 0.9);
  const auto outside = major_arc_approximation(3, 0.9, ReducedFraction(1, 3), std::ldexp(1.0, -9), 8, params);
  CHECK_FALSE(outside.inside_major_arc);
  const auto inside = major_arc_approximation(3, 0.9, ReducedFraction(1, 3), std::ldexp(1.0, -24), 8, params);
  CHECK(inside.inside_major_arc);
  // S(1/3) vanishes for k = 3, so the main term does too.
  CHECK(std::abs(inside.approx) < 1e-12);
}

TEST_CASE("theta kernel") {
  const double y = 0.05;
  const std::uint64_t T = theta_kernel_terms(2, y);
  CHECK(std::exp(-std::numbers::pi * T * T * y) >= 1e-16);
  CHECK(std::exp(-std::numbers::pi * (T + 1) * (T + 1) * y) < 1e-16);
  const Frequency f = Frequency::real(0.37);
  Complex direct = 0;
  for (std::uint64_t n = 1; n <= T; ++n) {
    direct += std::exp(-std::numbers::pi * n * n * y) * std::polar(1.0, -2 * std::numbers::pi * std::fmod(n * n * 0.37, 1.0));
  }
  CHECK(std::abs(theta_kernel(2, y, f) - direct) < 1e-12);
}

TEST_CASE("theta kernel Parseval identity") {
  for (int s : {1, 2, 3}) {
    for (double y : {0.02, 0.1, 0.5}) {
      const auto p = theta_parseval(s, 2, y);
      CHECK(p.integral == doctest::Approx(p.series).epsilon(1e-10));
    }
  }
  const auto p3 = theta_parseval(2, 3, 0.01);
  CHECK(p3.integral == doctest::Approx(p3.series).epsilon(1e-10));
}

TEST_CASE("Mellin identity") {
  for (int k : {1, 2, 5}) {
    for (double lambda : {0.1, 0.5, 0.95}) {
      for (std::uint64_t n : {1ull, 7ull, 1000ull}) {
        const auto c = mellin_identity_check(k, lambda, n);
        CHECK(c.rhs == doctest::Approx(c.lhs).epsilon(1e-11));
      }
    }
  }
}

TEST_CASE("coefficient lower bound") {
  const auto rows = coefficient_bound_audit(3, 2, 0.7, 400);
  CHECK(rows.size() == 400);
  CHECK(std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.holds; }));
  // s = 1: a_l is l^{-lambda/k} exactly on the k-th powers and zero elsewhere.
  for (const auto& r : coefficient_bound_audit(1, 2, 0.7, 100)) {
    CHECK(r.coefficient == doctest::Approx(r.lower_bound));
  }
  // s = 2 oracle: a_l = 2 sum_{n^2 = l} n^{-lambda} + sum_{n^2 + m^2 = l} (nm)^{-lambda}
  const auto two = coefficient_bound_audit(2, 2, 0.5, 50);
  CHECK(two[24].coefficient == doctest::Approx(2 * std::pow(5.0, -0.5) + 2 * std::pow(12.0, -0.5)));
}

TEST_CASE("norms and distribution functions") {
  const std::vector<double> flat(64, 3.0);
  CHECK(discrete_lu_norm(flat, 2.0) == doctest::Approx(3.0));
  CHECK(discrete_lu_norm(flat, INFINITY) == 3.0);
  const std::vector<double> v{4.0, 1.0, 2.0, 8.0};
  // sup_i v_(i) (i/M)^{1/r} over descending order 8, 4, 2, 1
  const double r = 2.0;
  const double expected = std::max({8 * std::sqrt(0.25), 4 * std::sqrt(0.5), 2 * std::sqrt(0.75), 1.0});
  const auto d = distribution_profile(v, r, 8);
  CHECK(d.weak_lr == doctest::Approx(expected));
  CHECK(d.thresholds.front().measure == 1.0);
  CHECK(d.thresholds.back().measure == 0.0);
  for (std::size_t i = 1; i < d.thresholds.size(); ++i) {
    CHECK(d.thresholds[i].measure <= d.thresholds[i - 1].measure);
  }
}

TEST_CASE("multiplier magnitudes match pointwise evaluation") {
  const auto mags = multiplier_magnitudes(2, 0.8, 64, 50);
  for (std::uint64_t i : {0ull, 13ull, 63ull}) {
    const auto m = multiplier_truncated(2, 0.8, Frequency::rational(2 * i + 1, 128), 50);
    CHECK(mags[i] == doctest::Approx(std::abs(m.value)).epsilon(1e-12));
  }
}

TEST_CASE("norm profile is stable under grid doubling past the bandwidth") {
  const std::vector<double> us{2.0, 4.0};
  const auto a = norm_profile(2, 0.75, 1 << 16, 128, us);
  const auto b = norm_profile(2, 0.75, 1 << 17, 128, us);
  for (std::size_t i = 0; i < us.size(); ++i) {
    CHECK(b.lu[i].estimate == doctest::Approx(a.lu[i].estimate).epsilon(0.02));
  }
  CHECK(b.distribution.weak_lr == doctest::Approx(a.distribution.weak_lr).epsilon(0.02));
  CHECK(a.distribution.r == doctest::Approx(8.0));
}

}  // TEST_SUITE
