#include "pvc/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "pvc/errors.hpp"
#include "pvc/kat.hpp"

using namespace pvc;

TEST_CASE("entropy of empirical distributions") {
  std::vector<Fe> distinct{3, 1, 4, 1593, 9, 2, 6, 5};
  EntropyReport r = entropy(distinct);
  CHECK(r.n_values == 8);
  CHECK(r.distinct_count == 8);
  CHECK(r.h_max == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(std::abs(r.h_bits - r.h_max) < 1e-12);

  std::vector<Fe> constant(16, 7);
  r = entropy(constant);
  CHECK(r.distinct_count == 1);
  CHECK(r.h_bits == doctest::Approx(0.0));

  // 8 values, one pair collides: H = log2(8) - 2/8.
  std::vector<Fe> one_pair{1, 2, 3, 4, 5, 6, 7, 7};
  r = entropy(one_pair);
  CHECK(r.h_bits == doctest::Approx(3.0 - 0.25).epsilon(1e-12));

  CHECK_THROWS_AS(entropy(std::vector<Fe>{}), Error);
}

TEST_CASE("gamma tail matches chi-square table anchors") {
  auto q = [](double df, double x) { return regularized_gamma_q(df / 2.0, x / 2.0); };
  CHECK(q(15, 30.577914) == doctest::Approx(0.01).epsilon(1e-5));
  CHECK(q(15, 24.995790) == doctest::Approx(0.05).epsilon(1e-5));
  CHECK(q(15, 22.307130) == doctest::Approx(0.10).epsilon(1e-5));
  CHECK(q(15, 14.338860) == doctest::Approx(0.50).epsilon(1e-5));
  CHECK(q(15, 6.262140) == doctest::Approx(0.975).epsilon(1e-5));
  CHECK(q(15, 5.229350) == doctest::Approx(0.99).epsilon(1e-5));

  CHECK(regularized_gamma_q(0.5, 0.0) == doctest::Approx(1.0));
  CHECK(regularized_gamma_q(1.0, 700.0) == doctest::Approx(0.0).epsilon(1e-12));
  // Q(1, x) = exp(-x).
  CHECK(regularized_gamma_q(1.0, 2.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-10));
  CHECK_THROWS_AS(regularized_gamma_q(0.0, 1.0), Error);
  CHECK_THROWS_AS(regularized_gamma_q(1.0, -1.0), Error);
}

TEST_CASE("bit statistics match the worked examples") {
  // Monobit over "1011010101": 6 ones, 4 zeros.
  Bytes ten_bits{0b10110101, 0b01000000};
  CHECK(monobit_p(ten_bits, 10) == doctest::Approx(0.527089).epsilon(1e-5));

  // Runs over "1001101011": 7 runs at pi = 0.6.
  Bytes runs_bits{0b10011010, 0b11000000};
  CHECK(runs_p(runs_bits, 10) == doctest::Approx(0.147232).epsilon(1e-5));

  // Poker over "11001001000011111101": five distinct hands, X = 11.0.
  Bytes poker_bits{0b11001001, 0b00001111, 0b11010000};
  CHECK(poker4_p(poker_bits, 20) == doctest::Approx(0.752594).epsilon(1e-5));
}

TEST_CASE("bit statistics behave on degenerate streams") {
  Bytes zeros(512, 0x00);
  RandomnessReport r = randomness_suite(zeros, 4096);
  CHECK(r.p_monobit < 1e-6);
  CHECK(r.p_runs == 0.0);  // monobit prerequisite fails, runs not attempted
  CHECK(r.p_poker4 < 1e-6);
  CHECK(!r.pass(0.01));

  Bytes alternating(512, 0b01010101);
  r = randomness_suite(alternating, 4096);
  CHECK(r.p_monobit == doctest::Approx(1.0));
  CHECK(r.p_runs < 1e-6);  // twice the expected number of runs
  CHECK(!r.pass(0.01));
}

TEST_CASE("real offset keystream passes the battery") {
  FieldCtx ctx(12347);
  SeededRandom rng(79);
  SharedVector g{{rng.uniform(1, 12346), rng.uniform(1, 12346), rng.uniform(1, 12346)}};
  Bytes salt(32);
  rng.fill(salt);
  DerivedKeys keys = derive_keys(g, salt, ctx);
  std::array<std::uint8_t, 16> nonce{};
  rng.fill(nonce);

  Bytes stream = offset_keystream(keys, nonce, 96);
  CHECK(stream.size() == 96 * 3 * 32);
  RandomnessReport r = randomness_suite(stream, stream.size() * 8);
  CHECK(r.bit_count == stream.size() * 8);
  CHECK(r.pass(0.01));
}

TEST_CASE("stream length guards") {
  Bytes small(16, 0xaa);
  CHECK_THROWS_AS(randomness_suite(small, 128), Error);   // under 2000 bits
  CHECK_THROWS_AS(randomness_suite(small, 4096), Error);  // more bits than provided
  CHECK_THROWS_AS(monobit_p(small, 200), Error);
  try {
    randomness_suite(small, 128);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::insufficient_bits);
  }
}

TEST_CASE("duplicate scan and the birthday estimate") {
  std::vector<std::array<Fe, 3>> vecs{
      {1, 2, 3}, {4, 5, 6}, {1, 2, 3}, {7, 8, 9}, {4, 5, 6}, {1, 2, 3}};
  auto dups = duplicate_scan(vecs);
  std::sort(dups.begin(), dups.end());
  REQUIRE(dups.size() == 4);
  CHECK(dups[0] == std::pair<std::size_t, std::size_t>{0, 2});
  CHECK(dups[1] == std::pair<std::size_t, std::size_t>{0, 5});
  CHECK(dups[2] == std::pair<std::size_t, std::size_t>{1, 4});
  CHECK(dups[3] == std::pair<std::size_t, std::size_t>{2, 5});

  CHECK(duplicate_scan(std::vector<std::array<Fe, 3>>{}).empty());

  double est = expected_duplicates(4800, 12347);
  CHECK(est == doctest::Approx(4800.0 * 4800.0 / (2.0 * 12347.0 * 12347.0 * 12347.0)));
  CHECK(expected_duplicates(96, 2305843009213693951ull) < 1e-15);
}

TEST_CASE("operation counts scale with the block plan") {
  OpCounters c = count_ops(5, 7);
  CHECK(c.field_mults == 216);
  CHECK(c.field_adds == 216);
  CHECK(c.hmac_calls == 54);

  c = count_ops(8, 10);
  CHECK(c.field_mults == 432);
  CHECK(c.field_adds == 432);
  CHECK(c.hmac_calls == 108);

  c = count_ops(12, 23);
  CHECK(c.field_mults == 1152);
  CHECK(c.field_adds == 1152);
  CHECK(c.hmac_calls == 288);

  CHECK(count_ops(3, 3) == OpCounters{36, 36, 9});
}

TEST_CASE("avalanche diffusion is pinned by the block structure") {
  FieldCtx ctx(12347);
  SeededRandom rng(83);
  AvalancheReport r = avalanche(100, 8, 10, ctx, rng);
  CHECK(r.trials == 100);
  CHECK(r.structural_violations == 0);
  // One flipped cell changes exactly one row per covering block, and within
  // that row the element at the flip's local column is fixed by V's zero
  // diagonal: 1/3 of rows, 2/9 of elements, with no sampling spread.
  CHECK(r.mean_row_diffusion == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(r.mean_element_diffusion == doctest::Approx(2.0 / 9.0).epsilon(1e-12));
}

TEST_CASE("avalanche holds at other shapes") {
  FieldCtx ctx(12347);
  SeededRandom rng(101);
  for (auto [m, n] : {std::pair<std::size_t, std::size_t>{5, 7}, {12, 23}, {3, 3}}) {
    AvalancheReport r = avalanche(30, m, n, ctx, rng);
    CHECK(r.structural_violations == 0);
    CHECK(r.mean_row_diffusion == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  }
}

TEST_CASE("known-plaintext probe breaks the bare block layer") {
  FieldCtx ctx(12347);
  SeededRandom rng(89);
  KpaReport r = kpa_probe(3, false, 50, ctx, rng);
  CHECK(r.trials == 50);
  CHECK(r.recovered >= 48);  // linear solve; singular stacks get resampled
  CHECK_THROWS_AS(kpa_probe(2, false, 1, ctx, rng), Error);
}

TEST_CASE("known-plaintext probe fails against the offset layer") {
  FieldCtx ctx(2305843009213693951ull);
  SeededRandom rng(97);
  KpaReport r = kpa_probe(3, true, 40, ctx, rng);
  CHECK(r.trials == 40);
  CHECK(r.recovered == 0);
  CHECK(r.residual_samples == 40 * 18);  // 27 entries minus the 3 fitted rows
  CHECK(r.residual_entropy_max - r.residual_entropy < 0.1);
}
