#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "support.hpp"
#include "weyllab/count_io.hpp"
#include "weyllab/error.hpp"
#include "weyllab/fit.hpp"
#include "weyllab/format.hpp"

using namespace weyllab;

TEST_SUITE("fit_and_io") {

TEST_CASE("exact power law") {
  std::vector<double> N, v;
  for (int e = 4; e <= 14; ++e) {
    N.push_back(std::ldexp(1.0, e));
    v.push_back(N.back() * N.back());
  }
  const auto fit = growth_exponent_fit(N, v);
  CHECK(std::abs(fit.slope - 2.0) < 1e-9);
  CHECK(fit.r_squared == doctest::Approx(1.0));
  CHECK(fit.max_abs_residual < 1e-9);
}

TEST_CASE("noisy power law") {
  auto gen = testing::rng(50);
  std::uniform_real_distribution<double> noise(-0.01, 0.01);
  std::vector<double> N, v;
  for (int e = 4; e <= 20; ++e) {
    N.push_back(std::ldexp(1.0, e));
    v.push_back(3.0 * std::pow(N.back(), 1.5) * (1 + noise(gen)));
  }
  CHECK(std::abs(growth_exponent_fit(N, v).slope - 1.5) < 0.05);
}

TEST_CASE("fit preconditions") {
  const std::vector<double> N{1, 2, 3, 4}, bad{1, 2, 0, 4}, ok{1, 2, 3, 4};
  CHECK_THROWS_AS(growth_exponent_fit(N, bad), InvalidArgument);
  CHECK_THROWS_AS(growth_exponent_fit(std::vector<double>{1, 2, 3}, std::vector<double>{1, 2, 3}), InvalidArgument);
  CHECK_THROWS_AS(growth_exponent_fit(std::vector<double>{1, 3, 2, 4}, ok), InvalidArgument);
}

TEST_CASE("float formatting") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0 / 3.0) == "0.333333333333333");
  CHECK(format_double(-INFINITY) == "-inf");
  CHECK(round15(1.0 / 3.0) == 0.333333333333333);
  CHECK(to_string(Rational(14, 16)) == "7/8");
  CHECK(to_string(Rational(4)) == "4");
}

TEST_CASE("binary count tables round-trip") {
  const auto table = representation_counts(2, 3, 3000);
  std::stringstream buf;
  write_count_table(buf, table);
  CHECK(read_count_table(buf) == table);

  CountTable synthetic = representation_counts(2, 2, 40, 5);
  synthetic.counts.set(7, (BigInt(1) << 100) + 12345);
  std::stringstream wide;
  write_count_table(wide, synthetic);
  const auto back = read_count_table(wide);
  CHECK(back == synthetic);
  CHECK(back.count(7) == (BigInt(1) << 100) + 12345);
  CHECK(back.part_bound == 5u);
}

TEST_CASE("damaged count tables are rejected") {
  std::stringstream buf;
  write_count_table(buf, representation_counts(2, 2, 200));
  const std::string bytes = buf.str();
  for (std::size_t cut : {std::size_t{0}, std::size_t{3}, std::size_t{20}, bytes.size() / 2, bytes.size() - 1}) {
    std::stringstream t(bytes.substr(0, cut));
    CHECK_THROWS_AS(read_count_table(t), CorruptData);
  }
  std::stringstream trailing(bytes + "x");
  CHECK_THROWS_AS(read_count_table(trailing), CorruptData);
  std::string flipped = bytes;
  flipped[bytes.size() / 2] ^= 0x10;
  std::stringstream f(flipped);
  CHECK_THROWS_AS(read_count_table(f), CorruptData);
}

TEST_CASE("csv and cache names") {
  std::ostringstream out;
  write_counts_csv(out, representation_counts(2, 2, 5));
  CHECK(out.str() == "l,count\n1,0\n2,1\n3,0\n4,0\n5,2\n");
  CHECK(count_table_cache_name(2, 3, 2000, {}) == "r_s2_k3_N2000_bnone.wlct");
  CHECK(count_table_cache_name(3, 3, 100, 4) == "r_s3_k3_N100_b4.wlct");
}

}  // TEST_SUITE
