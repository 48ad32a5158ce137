#include "weyllab/convolution.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>

#include "weyllab/error.hpp"
#include "weyllab/parallel.hpp"

namespace weyllab {

namespace ntt {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr std::array<Prime, 10> kPrimes{{
    {4611615649683210241ULL, 11},
    {4611613450659954689ULL, 3},
    {4611549678985543681ULL, 19},
    {4611546380450660353ULL, 5},
    {4611524390218104833ULL, 3},
    {4611496902427410433ULL, 5},
    {4611480409752993793ULL, 10},
    {4611468315125088257ULL, 3},
    {4611467215613460481ULL, 13},
    {4611458419520438273ULL, 3},
}};

constexpr int kMaxLog2 = 40;

inline u64 mul_mod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

inline u64 add_mod(u64 a, u64 b, u64 p) {
  u64 s = a + b;
  return s >= p ? s - p : s;
}

inline u64 sub_mod(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }

u64 pow_mod(u64 base, u64 e, u64 p) {
  u64 r = 1;
  base %= p;
  while (e) {
    if (e & 1) r = mul_mod(r, base, p);
    base = mul_mod(base, base, p);
    e >>= 1;
  }
  return r;
}

// Iterative radix-2 transform, bit-reversed input ordering.
void transform(std::vector<u64>& a, const Prime& prime, bool inverse) {
  const u64 p = prime.modulus;
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    u64 w = pow_mod(prime.generator, (p - 1) / len, p);
    if (inverse) w = pow_mod(w, p - 2, p);
    const std::size_t half = len / 2;
    std::vector<u64> twiddle(half);
    twiddle[0] = 1;
    for (std::size_t i = 1; i < half; ++i) twiddle[i] = mul_mod(twiddle[i - 1], w, p);
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t j = 0; j < half; ++j) {
        const u64 u = a[i + j];
        const u64 v = mul_mod(a[i + j + half], twiddle[j], p);
        a[i + j] = add_mod(u, v, p);
        a[i + j + half] = sub_mod(u, v, p);
      }
    }
  }
  if (inverse) {
    const u64 inv_n = pow_mod(n % p, p - 2, p);
    for (auto& x : a) x = mul_mod(x, inv_n, p);
  }
}

}  // namespace

std::span<const Prime> primes() { return kPrimes; }

std::vector<std::uint64_t> convolve_mod(std::span<const std::uint64_t> a,
                                        std::span<const std::uint64_t> b, std::size_t length,
                                        std::size_t prime_index) {
  const Prime& prime = kPrimes.at(prime_index);
  const std::size_t na = std::min(a.size(), length);
  const std::size_t nb = std::min(b.size(), length);
  if (na == 0 || nb == 0) {
    return std::vector<std::uint64_t>(length, 0);
  }
  const std::size_t full = na + nb - 1;
  const std::size_t n = std::bit_ceil(full);
  if (std::countr_zero(n) > kMaxLog2) {
    throw BudgetExceeded("NTT length exceeds 2^40");
  }
  std::vector<u64> fa(n, 0), fb(n, 0);
  for (std::size_t i = 0; i < na; ++i) fa[i] = a[i] % prime.modulus;
  for (std::size_t i = 0; i < nb; ++i) fb[i] = b[i] % prime.modulus;
  transform(fa, prime, false);
  transform(fb, prime, false);
  for (std::size_t i = 0; i < n; ++i) fa[i] = mul_mod(fa[i], fb[i], prime.modulus);
  transform(fa, prime, true);
  fa.resize(length, 0);
  return fa;
}

}  // namespace ntt

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

std::size_t bit_length(const BigInt& v) {
  if (v == 0) return 0;
  return static_cast<std::size_t>(boost::multiprecision::msb(v)) + 1;
}

std::size_t bit_length(std::size_t v) { return static_cast<std::size_t>(std::bit_width(v)); }

// Upper bound on the bit length of any output coefficient.
std::size_t coefficient_bound_bits(const CountSequence& a, const CountSequence& b) {
  const std::size_t terms = std::min(a.nonzeros(), b.nonzeros());
  return bit_length(a.max_value()) + bit_length(b.max_value()) + bit_length(terms);
}

CountSequence from_u128(const std::vector<u128>& acc) {
  const bool fits = std::all_of(acc.begin(), acc.end(), [](u128 v) { return (v >> 64) == 0; });
  if (fits) {
    std::vector<u64> out(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i) out[i] = static_cast<u64>(acc[i]);
    return CountSequence(std::move(out));
  }
  std::vector<BigInt> out(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) {
    out[i] = static_cast<u64>(acc[i] >> 64);
    out[i] <<= 64;
    out[i] += static_cast<u64>(acc[i]);
  }
  return CountSequence(std::move(out));
}

std::vector<std::pair<std::size_t, BigInt>> sparse_entries(const CountSequence& s, std::size_t limit) {
  std::vector<std::pair<std::size_t, BigInt>> out;
  const std::size_t n = std::min(s.size(), limit);
  for (std::size_t i = 0; i < n; ++i) {
    BigInt v = s.at(i);
    if (v != 0) out.emplace_back(i, std::move(v));
  }
  return out;
}

CountSequence schoolbook(const CountSequence& a, const CountSequence& b, std::size_t length) {
  // Scatter the sparser operand over the denser one.
  const bool swap = a.nonzeros() > b.nonzeros();
  const CountSequence& sparse = swap ? b : a;
  const CountSequence& dense = swap ? a : b;
  const std::size_t dn = std::min(dense.size(), length);

  if (!a.is_wide() && !b.is_wide() && coefficient_bound_bits(a, b) <= 127) {
    std::vector<u128> acc(length, 0);
    const auto sv = sparse.narrow();
    const auto dv = dense.narrow();
    const std::size_t sn = std::min(sv.size(), length);
    for (std::size_t j = 0; j < sn; ++j) {
      if (sv[j] == 0) continue;
      const u128 w = sv[j];
      const std::size_t span = std::min(dn, length - j);
      for (std::size_t i = 0; i < span; ++i) {
        acc[j + i] += w * dv[i];
      }
    }
    return from_u128(acc);
  }

  std::vector<BigInt> acc(length);
  const auto dense_wide = dense.wide();
  for (const auto& [j, w] : sparse_entries(sparse, length)) {
    const std::size_t span = std::min(dn, length - j);
    for (std::size_t i = 0; i < span; ++i) {
      if (dense_wide[i] != 0) acc[j + i] += w * dense_wide[i];
    }
  }
  return CountSequence(std::move(acc));
}

std::vector<u64> residues(const CountSequence& s, std::size_t limit, u64 p) {
  const std::size_t n = std::min(s.size(), limit);
  std::vector<u64> out(n);
  if (!s.is_wide()) {
    const auto v = s.narrow();
    for (std::size_t i = 0; i < n; ++i) out[i] = v[i] % p;
  } else {
    for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<u64>(s.at(i) % p);
  }
  return out;
}

CountSequence via_ntt(const CountSequence& a, const CountSequence& b, std::size_t length) {
  const auto primes = ntt::primes();
  // Product of t primes exceeds 2^(61.99 t); the bound must fit strictly below it.
  const std::size_t bound_bits = coefficient_bound_bits(a, b);
  const std::size_t channels = bound_bits / 61 + 1;
  if (channels > primes.size()) {
    return schoolbook(a, b, length);
  }

  std::vector<std::vector<u64>> channel(channels);
  parallel_for(channels, [&](std::size_t begin, std::size_t end) {
    for (std::size_t c = begin; c < end; ++c) {
      const u64 p = primes[c].modulus;
      channel[c] = ntt::convolve_mod(residues(a, length, p), residues(b, length, p), length, c);
    }
  });

  if (channels == 1) {
    return CountSequence(std::move(channel[0]));
  }

  // Garner: x = d0 + d1 p0 + d2 p0 p1 + ...
  std::vector<std::vector<u64>> inv(channels, std::vector<u64>(channels, 0));
  for (std::size_t i = 0; i < channels; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const u64 pi = primes[i].modulus;
      u64 base = primes[j].modulus % pi, e = pi - 2, r = 1;
      while (e) {
        if (e & 1) r = static_cast<u64>(static_cast<u128>(r) * base % pi);
        base = static_cast<u64>(static_cast<u128>(base) * base % pi);
        e >>= 1;
      }
      inv[j][i] = r;
    }
  }

  std::vector<BigInt> radix_products(channels);
  radix_products[0] = 1;
  for (std::size_t c = 1; c < channels; ++c) radix_products[c] = radix_products[c - 1] * primes[c - 1].modulus;

  std::vector<BigInt> out(length);
  std::vector<u64> digit(channels);
  for (std::size_t n = 0; n < length; ++n) {
    for (std::size_t i = 0; i < channels; ++i) {
      const u64 pi = primes[i].modulus;
      u64 x = channel[i][n];
      for (std::size_t j = 0; j < i; ++j) {
        const u64 d = digit[j] % pi;
        x = x >= d ? x - d : x + pi - d;
        x = static_cast<u64>(static_cast<u128>(x) * inv[j][i] % pi);
      }
      digit[i] = x;
    }
    BigInt value = 0;
    for (std::size_t i = channels; i-- > 0;) {
      if (digit[i] != 0) value += radix_products[i] * digit[i];
    }
    out[n] = std::move(value);
  }
  return CountSequence(std::move(out));
}

}  // namespace

ConvolutionMethod choose_convolution_method(const CountSequence& a, const CountSequence& b,
                                            std::size_t length, const ConvolutionOptions& options) {
  if (options.method != ConvolutionMethod::automatic) {
    return options.method;
  }
  if (length < options.ntt_threshold) {
    return ConvolutionMethod::schoolbook;
  }
  const double sparse_work = static_cast<double>(std::min(a.nonzeros(), b.nonzeros())) *
                             static_cast<double>(std::min({a.size(), b.size(), length}));
  const double n = static_cast<double>(std::bit_ceil(2 * length));
  const double channels = static_cast<double>(coefficient_bound_bits(a, b) / 61 + 1);
  // Three transforms per channel; a modular butterfly costs roughly 8 schoolbook adds.
  const double ntt_work = 3.0 * channels * n * std::log2(n) * 8.0;
  return sparse_work <= ntt_work ? ConvolutionMethod::schoolbook : ConvolutionMethod::ntt;
}

CountSequence truncated_convolution(const CountSequence& a, const CountSequence& b,
                                    std::size_t length, const ConvolutionOptions& options) {
  if (length == 0) {
    return CountSequence{};
  }
  switch (choose_convolution_method(a, b, length, options)) {
    case ConvolutionMethod::ntt:
      return via_ntt(a, b, length);
    default:
      return schoolbook(a, b, length);
  }
}

}  // namespace weyllab
