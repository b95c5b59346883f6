#pragma once

#include <utility>

#include "pvc/cipher.hpp"

namespace pvc {

struct EntropyReport {
  std::size_t n_values = 0;
  std::size_t distinct_count = 0;
  double h_bits = 0.0;
  double h_max = 0.0;  // log2(n_values)
};

// Plug-in Shannon entropy over empirical frequencies. Throws Error(config)
// on an empty sample. When all values are distinct, h_bits == h_max exactly.
EntropyReport entropy(std::span<const Fe> values);

struct AvalancheReport {
  std::size_t trials = 0;
  // Fraction of block rows changed among the rows of blocks covering the
  // flipped cell. The block transform maps a one-cell change to one full row
  // per covering block, so this sits at 1/3.
  double mean_row_diffusion = 0.0;
  // Fraction of changed elements in those blocks. The key matrix V has a
  // zero diagonal, so within the changed row the element at the flipped
  // cell's local column keeps its value: 2 of 9.
  double mean_element_diffusion = 0.0;
  // Trials where any change escaped the predicted rows or the per-row
  // change pattern was not exactly the two off-position elements.
  std::size_t structural_violations = 0;
};

// Encrypt a random full-matrix message, flip one random plaintext bit,
// re-encrypt under identical keys/salt/nonce, and diff the ciphertexts.
AvalancheReport avalanche(std::size_t trials, std::size_t m, std::size_t n, const FieldCtx& ctx,
                          RandomSource& rng);

struct RandomnessReport {
  std::size_t bit_count = 0;
  double p_monobit = 0.0;
  double p_runs = 0.0;
  double p_poker4 = 0.0;

  bool pass(double alpha) const {
    return p_monobit >= alpha && p_runs >= alpha && p_poker4 >= alpha;
  }
};

// Frequency (monobit), runs, and poker (4-bit blocks) tests. Bits are taken
// MSB-first from the stream; requires at least 2000 bits, else throws
// Error(insufficient_bits).
RandomnessReport randomness_suite(ByteView stream, std::size_t bit_count);

// The individual statistics, usable on streams of any length (the textbook
// worked examples run on 10 and 20 bits). runs_p returns 0 when the monobit
// prerequisite |pi - 1/2| >= 2/sqrt(n) fails.
double monobit_p(ByteView stream, std::size_t bit_count);
double runs_p(ByteView stream, std::size_t bit_count);
double poker4_p(ByteView stream, std::size_t bit_count);

// All 0-based index pairs (i, j), i < j, with identical vectors.
std::vector<std::pair<std::size_t, std::size_t>> duplicate_scan(
    std::span<const std::array<Fe, 3>> vectors);

// Birthday estimate for n draws from a p^3 space: n^2 / (2 p^3).
double expected_duplicates(std::size_t n, u64 p);

struct OpCounters {
  u64 field_mults = 0;
  u64 field_adds = 0;
  u64 hmac_calls = 0;

  void reset() { *this = OpCounters{}; }
  bool operator==(const OpCounters&) const = default;
};

// Dry-run tally of one full encryption at the given shape: per block, the
// 9 entries of S*V + Delta*U count as 9 four-term multiply-accumulates
// (36 mults, 36 adds), plus one HMAC per ciphertext element (9).
OpCounters count_ops(std::size_t m, std::size_t n);

struct KpaReport {
  std::size_t trials = 0;
  std::size_t recovered = 0;          // exact key-matrix recoveries
  std::size_t singular_retries = 0;   // row stacks that had to be resampled
  std::size_t residual_samples = 0;   // offsets-on only
  double residual_entropy = 0.0;
  double residual_entropy_max = 0.0;  // log2(residual_samples)
};

// Known-plaintext probe against the block layer. Each trial draws a fresh
// key matrix and num_pairs known (S, ciphertext) pairs with Delta = 0, then
// solves C = S*V for V from three independent S rows. With offsets disabled
// the classical linear attack succeeds; with the per-column keystream on,
// the same solve is run against the offset columns and the report carries
// the residual statistics instead.
KpaReport kpa_probe(std::size_t num_pairs, bool with_offsets, std::size_t trials,
                    const FieldCtx& ctx, RandomSource& rng);

// Regularized upper incomplete gamma Q(a, x); Q(df/2, x/2) is the upper tail
// of a chi-square with df degrees of freedom.
double regularized_gamma_q(double a, double x);

}  // namespace pvc
