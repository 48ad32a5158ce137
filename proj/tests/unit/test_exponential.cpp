#include <cmath>
#include <numbers>
#include <numeric>

#include "doctest.h"
#include "support.hpp"
#include "weyllab/arithmetic.hpp"
#include "weyllab/error.hpp"
#include "weyllab/exponential_sums.hpp"
#include "weyllab/frequency.hpp"
#include "weyllab/quadrature.hpp"

using namespace weyllab;

namespace {

// frac(n^k * (a/q + offset)) in exact rational arithmetic.
double exact_power_turns(std::uint64_t n, int k, std::uint64_t a, std::uint64_t q, double offset) {
  BigInt nk = 1;
  for (int i = 0; i < k; ++i) nk *= n;
  Rational t = Rational(nk) * (Rational(BigInt(a), BigInt(q)) + exact_rational(offset));
  const BigInt fl = boost::multiprecision::numerator(t) / boost::multiprecision::denominator(t);
  t -= Rational(fl);
  if (t < 0) t += 1;
  return to_double(t);
}

double circle_gap(double x, double y) {
  const double d = std::abs(x - y);
  return std::min(d, 1.0 - d);
}

}  // namespace

TEST_SUITE("exponential_sums") {

TEST_CASE("reduced fractions") {
  CHECK_THROWS_AS(ReducedFraction(2, 4), InvalidArgument);
  CHECK_THROWS_AS(ReducedFraction(0, 3), InvalidArgument);
  CHECK_THROWS_AS(ReducedFraction(4, 3), InvalidArgument);
  CHECK(ReducedFraction::normalized(0, 5) == ReducedFraction(1, 1));
  CHECK(ReducedFraction::normalized(6, 4) == ReducedFraction(1, 2));
  CHECK(ReducedFraction::normalized(4, 2) == ReducedFraction(1, 1));
}

TEST_CASE("unit phase") {
  CHECK(std::abs(unit_phase(0.25) - Complex(0, 1)) < 1e-15);
  CHECK(std::abs(unit_phase(7.5) - Complex(-1, 0)) < 1e-15);
  CHECK(std::abs(unit_phase(-0.125) - std::polar(1.0, -std::numbers::pi / 4)) < 1e-15);
}

TEST_CASE("power phases are reduced exactly") {
  auto gen = testing::rng(10);
  for (int trial = 0; trial < 3000; ++trial) {
    const int k = 1 + static_cast<int>(gen() % 5);
    const std::uint64_t q = 1 + gen() % 1000;
    const std::uint64_t a = gen() % q;
    const double offset = std::ldexp(static_cast<double>(gen() >> 11), -53 - static_cast<int>(gen() % 30));
    const std::uint64_t n = 1 + gen() % 100000;
    const Frequency f = a == 0 ? Frequency::real(offset) : Frequency::near(ReducedFraction::normalized(a, q), offset);
    CHECK(circle_gap(f.power_turns(n, k), exact_power_turns(n, k, a == 0 ? 0 : a / std::gcd(a, q), a == 0 ? 1 : q / std::gcd(a, q), offset)) < 1e-15);
  }
  // a naive double product loses every digit here
  const Frequency tiny = Frequency::real(std::ldexp(1.0, -40) + std::ldexp(1.0, -90));
  CHECK(circle_gap(tiny.power_turns(1ull << 20, 3), exact_power_turns(1ull << 20, 3, 0, 1, std::ldexp(1.0, -40) + std::ldexp(1.0, -90))) < 1e-15);
}

TEST_CASE("quadratic Gauss sums have modulus sqrt q") {
  for (std::uint64_t q : {3ull, 5ull, 7ull, 11ull, 13ull, 97ull}) {
    for (std::uint64_t a = 1; a < q; ++a) {
      CHECK(std::abs(std::abs(weyl_sum_complete(ReducedFraction(a, q), 2)) - std::sqrt(static_cast<double>(q))) < 1e-9);
    }
  }
}

TEST_CASE("complete sums against a direct evaluation") {
  for (std::uint64_t q = 1; q <= 30; ++q)
    for (std::uint64_t a = 1; a <= q; ++a) {
      if (std::gcd(a, q) != 1) continue;
      for (int k = 1; k <= 4; ++k) {
        Complex direct = 0;
        for (std::uint64_t l = 1; l <= q; ++l) {
          std::uint64_t r = 1;
          for (int i = 0; i < k; ++i) r = r * l % q;
          direct += std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(r * a % q) / static_cast<double>(q));
        }
        CHECK(std::abs(direct - weyl_sum_complete(ReducedFraction(a, q), k)) < 1e-11);
      }
    }
  CHECK(std::abs(weyl_sum_complete(ReducedFraction(1, 3), 3)) < 1e-12);
  CHECK(std::abs(weyl_sum_complete(ReducedFraction(1, 7), 1)) < 1e-12);
}

TEST_CASE("classical bound audit") {
  const auto audit = classical_bound_audit(2, 50);
  CHECK(audit.per_q_maxima.size() == 50);
  for (const auto& row : audit.per_q_maxima) {
    if (row.q % 2 == 1) CHECK(row.ratio == doctest::Approx(1.0).epsilon(1e-9));
  }
  // q = 2 mod 4 gives S = 0, q = 0 mod 4 gives |S| = sqrt(2q)
  CHECK(audit.max_ratio == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
  CHECK_THROWS_AS(classical_bound_audit(2, 1), InvalidArgument);
}

TEST_CASE("partial Weyl sums") {
  const Frequency f = Frequency::real(0.1234567);
  Complex direct = 0;
  for (std::uint64_t n = 5; n < 5 + 40; ++n) {
    direct += std::polar(1.0, -2 * std::numbers::pi * std::fmod(static_cast<double>(n * n * n) * 0.1234567, 1.0));
  }
  CHECK(std::abs(partial_weyl_sum(3, f, 5, 40) - direct) < 1e-9);
  CHECK(std::abs(weyl_sum_box(2, Frequency::rational(1, 1), 17) - Complex(17, 0)) < 1e-12);
}

TEST_CASE("band-limited quadrature is exact") {
  for (int s = 1; s <= 2; ++s)
    for (int k = 1; k <= 3; ++k)
      for (std::uint64_t X = 1; X <= 6; ++X) {
        const double lattice = lattice_mean_value(s, k, X).convert_to<double>();
        CHECK(mean_value_quadrature(s, k, X) == doctest::Approx(lattice).epsilon(1e-9));
      }
  CHECK_THROWS_AS(mean_value_quadrature(3, 3, 1000), BudgetExceeded);
}

TEST_CASE("exponent report") {
  CHECK(eta_bound(10, 3) == doctest::Approx(9.0 * std::exp(-20.0 / 9.0)));
  const auto r3 = sigma_report(3, 1.0);
  CHECK(r3.sigma1 == doctest::Approx(0.25));
  CHECK(r3.sigma3.has_value());
  CHECK(r3.sigma_max >= r3.sigma1);
  const auto low = sigma_report(5, 0.5);
  CHECK_FALSE(low.sigma3.has_value());
  const auto r12 = sigma_report(12, 1.0);
  REQUIRE(r12.sigma2_simplified.has_value());
  CHECK(r12.sigma2 >= *r12.sigma2_simplified);
  CHECK(r12.window == static_cast<int>(std::ceil(8.0 * 144 * std::log(12.0))));
  CHECK_THROWS_AS(sigma_report(3, 1.5), InvalidArgument);
}

TEST_CASE("Gauss-Legendre panels") {
  // 16 nodes integrate degree 31 exactly
  CHECK(gauss_legendre_panels_real([](double x) { return std::pow(x, 31); }, 0.0, 1.0, 1) == doctest::Approx(1.0 / 32).epsilon(1e-14));
  CHECK(gauss_legendre_panels_real([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, 4) == doctest::Approx(2.0).epsilon(1e-14));
  const Complex z = gauss_legendre_panels([](double x) { return Complex(std::cos(x), std::sin(x)); }, 0.0, 1.0, 2);
  CHECK(std::abs(z - Complex(std::sin(1.0), 1.0 - std::cos(1.0))) < 1e-14);
}

TEST_CASE("gamma kernel integral") {
  for (double a : {0.1, 0.3, 0.9, 1.0, 2.5}) {
    for (double c : {0.5, 3.14159, 100.0, 1e6}) {
      const double expected = std::tgamma(a) * std::pow(c, -a);
      CHECK(gamma_kernel_integral(c, a) == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

}  // TEST_SUITE
