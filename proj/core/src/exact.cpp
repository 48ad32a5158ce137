#include "weyllab/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "weyllab/error.hpp"

namespace weyllab {

namespace {
constexpr std::uint64_t kU64Max = std::numeric_limits<std::uint64_t>::max();
}

CountSequence::CountSequence(std::vector<BigInt> values) : wide_(std::move(values)) { compact(); }

std::size_t CountSequence::size() const { return wide_ ? wide_->size() : narrow_.size(); }

BigInt CountSequence::at(std::size_t i) const {
  if (wide_) {
    return (*wide_)[i];
  }
  return BigInt(narrow_[i]);
}

void CountSequence::set(std::size_t i, const BigInt& value) {
  if (value < 0) {
    throw InvalidArgument("CountSequence holds nonnegative integers only");
  }
  if (wide_) {
    (*wide_)[i] = value;
    return;
  }
  if (value > kU64Max) {
    wide_ = wide();
    narrow_.clear();
    narrow_.shrink_to_fit();
    (*wide_)[i] = value;
    return;
  }
  narrow_[i] = static_cast<std::uint64_t>(value);
}

void CountSequence::resize(std::size_t n) {
  if (wide_) {
    wide_->resize(n);
  } else {
    narrow_.resize(n, 0);
  }
}

std::vector<BigInt> CountSequence::wide() const {
  if (wide_) {
    return *wide_;
  }
  std::vector<BigInt> out;
  out.reserve(narrow_.size());
  for (std::uint64_t v : narrow_) {
    out.emplace_back(v);
  }
  return out;
}

BigInt CountSequence::max_value() const {
  if (wide_) {
    BigInt best = 0;
    for (const auto& v : *wide_) {
      if (v > best) best = v;
    }
    return best;
  }
  if (narrow_.empty()) {
    return 0;
  }
  return BigInt(*std::max_element(narrow_.begin(), narrow_.end()));
}

std::size_t CountSequence::nonzeros() const {
  if (wide_) {
    return static_cast<std::size_t>(
        std::count_if(wide_->begin(), wide_->end(), [](const BigInt& v) { return v != 0; }));
  }
  return static_cast<std::size_t>(
      std::count_if(narrow_.begin(), narrow_.end(), [](std::uint64_t v) { return v != 0; }));
}

void CountSequence::compact() {
  if (!wide_) {
    return;
  }
  for (const auto& v : *wide_) {
    if (v > kU64Max) {
      return;
    }
  }
  narrow_.resize(wide_->size());
  for (std::size_t i = 0; i < wide_->size(); ++i) {
    narrow_[i] = static_cast<std::uint64_t>((*wide_)[i]);
  }
  wide_.reset();
}

bool operator==(const CountSequence& a, const CountSequence& b) {
  if (a.size() != b.size()) {
    return false;
  }
  if (!a.is_wide() && !b.is_wide()) {
    return a.narrow_ == b.narrow_;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.at(i) != b.at(i)) {
      return false;
    }
  }
  return true;
}

BigInt sum_of_squares(const CountSequence& seq, std::size_t first, std::size_t last) {
  last = std::min(last, seq.size());
  if (!seq.is_wide()) {
    // 128-bit accumulation with a spill into BigInt on overflow.
    BigInt total = 0;
    unsigned __int128 acc = 0;
    const auto v = seq.narrow();
    for (std::size_t i = first; i < last; ++i) {
      const unsigned __int128 sq = static_cast<unsigned __int128>(v[i]) * v[i];
      if (acc > ~static_cast<unsigned __int128>(0) - sq) {
        BigInt spill = static_cast<std::uint64_t>(acc >> 64);
        spill <<= 64;
        spill += static_cast<std::uint64_t>(acc);
        total += spill;
        acc = 0;
      }
      acc += sq;
    }
    BigInt tail = static_cast<std::uint64_t>(acc >> 64);
    tail <<= 64;
    tail += static_cast<std::uint64_t>(acc);
    return total + tail;
  }
  BigInt total = 0;
  for (std::size_t i = first; i < last; ++i) {
    const BigInt v = seq.at(i);
    total += v * v;
  }
  return total;
}

std::optional<std::uint64_t> checked_pow(std::uint64_t x, int k) {
  std::uint64_t result = 1;
  for (int i = 0; i < k; ++i) {
    if (x != 0 && result > kU64Max / x) {
      return std::nullopt;
    }
    result *= x;
  }
  return result;
}

std::uint64_t integer_root(std::uint64_t n, int k) {
  detail::require(k >= 1, "integer_root: k must be >= 1");
  if (k == 1 || n <= 1) {
    return n;
  }
  // Binary search on the exact predicate x^k <= n.
  std::uint64_t lo = 1;
  std::uint64_t hi = std::uint64_t{1} << std::min(63, (64 + k - 1) / k + 1);
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo + 1) / 2;
    const auto p = checked_pow(mid, k);
    if (p && *p <= n) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

Rational exact_rational(double x) {
  detail::require(std::isfinite(x), "exact_rational: value must be finite");
  if (x == 0.0) {
    return Rational(0);
  }
  int exponent = 0;
  const double mantissa = std::frexp(x, &exponent);
  BigInt num = static_cast<std::int64_t>(std::ldexp(mantissa, 53));
  exponent -= 53;
  BigInt den = 1;
  if (exponent >= 0) {
    num <<= exponent;
  } else {
    den <<= -exponent;
  }
  return Rational(num, den);
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace weyllab
