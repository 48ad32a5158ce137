#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "weyllab/exact.hpp"

namespace weyllab {

enum class ConvolutionMethod { automatic, schoolbook, ntt };

struct ConvolutionOptions {
  ConvolutionMethod method = ConvolutionMethod::automatic;
  /// Below this output length the schoolbook kernel is always used.
  std::size_t ntt_threshold = std::size_t{1} << 12;
};

/// c[i] = sum_{j <= i} a[j] * b[i - j] for 0 <= i < length, exact.
///
/// The schoolbook kernel iterates over the nonzeros of the sparser operand.
/// The fast path runs a number-theoretic transform modulo as many 62-bit
/// primes as the coefficient bound requires and recombines residues with
/// Garner's algorithm, so both paths produce identical sequences.
CountSequence truncated_convolution(const CountSequence& a, const CountSequence& b,
                                    std::size_t length, const ConvolutionOptions& options = {});

/// Method the automatic policy would pick for these operands.
ConvolutionMethod choose_convolution_method(const CountSequence& a, const CountSequence& b,
                                            std::size_t length, const ConvolutionOptions& options);

namespace ntt {

/// NTT-friendly primes p = c * 2^40 + 1 just below 2^62, with a primitive root each.
struct Prime {
  std::uint64_t modulus;
  std::uint64_t generator;
};
std::span<const Prime> primes();

/// Cyclic convolution of residues modulo primes()[index]; inputs are padded to a power of two.
std::vector<std::uint64_t> convolve_mod(std::span<const std::uint64_t> a,
                                        std::span<const std::uint64_t> b, std::size_t length,
                                        std::size_t prime_index);

}  // namespace ntt
}  // namespace weyllab
