#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "weyllab/signal.hpp"

namespace weyllab {

enum class OperatorMethod { automatic, direct, sparse };

/// Largest output length apply_operator will allocate.
inline constexpr std::uint64_t kMaxOperatorLength = std::uint64_t{1} << 27;

/// ceil(L^{1/k}) + 1: every kernel term m^k that can reach an output window of length L.
std::uint64_t default_truncation(int k, std::uint64_t output_length);

/// g(n) = sum_{m=1}^{M} f(n - m^k) m^{-lambda} on its full support
/// [offset + 1, offset + |f| - 1 + M^k].
///
/// direct: dense scatter of every input entry against every kernel term.
/// sparse: scatter of the nonzero input entries only.
SignalVector apply_operator(int k, double lambda, const SignalVector& f, std::uint64_t M,
                            OperatorMethod method = OperatorMethod::automatic);

/// g(n) for first <= n < first + length, gathered term by term.
SignalVector apply_operator_window(int k, double lambda, const SignalVector& f, std::int64_t first,
                                   std::uint64_t length, std::uint64_t M);

struct PowerWitnessRow {
  std::uint64_t length = 0;
  double input_norm = 0.0;   // ||f_L||_p
  double output_norm = 0.0;  // ||I f_L||_q on [1, L]
  double ratio = 0.0;
};

struct PowerWitness {
  int k = 0;
  double lambda = 0.0;
  double inv_p = 0.0;
  double inv_q = 0.0;
  double gamma = 0.0;
  std::vector<PowerWitnessRow> rows;
  bool strictly_increasing = false;
  /// Relative change of the ratio over the last step.
  double last_increment = 0.0;
  /// |last_increment| < 1%.
  bool stabilizes = false;
};

/// Ratios ||I f_L||_q / ||f_L||_p for f_L(n) = n^{-gamma} on 1..L. The output is
/// measured on the window [1, L] with truncation ceil(L^{1/k}) + 1, which is exact there.
PowerWitness necessity_witness_power(int k, double lambda, double inv_p, double inv_q, double gamma,
                                     std::span<const std::uint64_t> lengths);

struct DeltaWitnessRow {
  std::uint64_t M = 0;
  double partial_sum = 0.0;  // sum_{m <= M} |I g(m^k)|^q = sum m^{-lambda q}
};

struct DeltaWitness {
  int k = 0;
  double lambda = 0.0;
  double q = 0.0;
  std::vector<DeltaWitnessRow> rows;
  /// Local decay exponent a of m^{-a}, read off the last two increments.
  double exponent_estimate = 0.0;
  bool divergent = false;
};

/// Partial sums of |I g|^q for the unit impulse g. Flags divergence when the
/// estimated exponent is at most 1 + 1e-3. The last three M must be in geometric progression.
DeltaWitness necessity_witness_delta(int k, double lambda, double q, std::span<const std::uint64_t> Ms);

}  // namespace weyllab
