#include "pvc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include "pvc/errors.hpp"

namespace pvc {

EntropyReport entropy(std::span<const Fe> values) {
  if (values.empty()) throw Error(Errc::config, "entropy of an empty sample");
  std::unordered_map<Fe, std::size_t> freq;
  freq.reserve(values.size());
  for (Fe v : values) ++freq[v];
  double n = static_cast<double>(values.size());
  // H = log2(n) - (1/n) * sum c*log2(c): exact log2(n) when all counts are 1.
  double acc = 0.0;
  for (const auto& [v, c] : freq)
    if (c > 1) acc += static_cast<double>(c) * std::log2(static_cast<double>(c));
  EntropyReport r;
  r.n_values = values.size();
  r.distinct_count = freq.size();
  r.h_max = std::log2(n);
  r.h_bits = r.h_max - acc / n;
  return r;
}

AvalancheReport avalanche(std::size_t trials, std::size_t m, std::size_t n, const FieldCtx& ctx,
                          RandomSource& rng) {
  SsmIndexPlan plan = plan_indices(m, n);
  std::size_t b = plan.block_count();
  AvalancheReport rep;
  rep.trials = trials;
  double row_sum = 0.0, elem_sum = 0.0;

  // Header metadata does not influence the block transform; only the shared
  // vector, salt and nonce matter here.
  PrimitiveVector g{{2, 3, 5}};
  std::array<Fe, 3> sender_public{2, 3, 5};

  for (std::size_t trial = 0; trial < trials; ++trial) {
    SharedVector shared;
    for (auto& k : shared.k) k = rng.uniform(1, ctx.p() - 1);
    SessionParams session = random_session(static_cast<std::uint16_t>(m),
                                           static_cast<std::uint16_t>(n), 1, 1, rng);
    Bytes msg(m * n);
    rng.fill(msg);

    Ciphertext base = encrypt(msg, g, sender_public, shared, session, ctx);
    std::size_t cell = rng.uniform(0, m * n - 1);
    msg[cell] ^= static_cast<std::uint8_t>(1u << rng.uniform(0, 7));
    Ciphertext flipped = encrypt(msg, g, sender_public, shared, session, ctx);

    std::size_t cell_row = cell / n + 1, cell_col = cell % n + 1;  // 1-based
    std::size_t covering = 0;
    bool ok = true;
    std::size_t changed_rows = 0, changed_elems = 0;

    for (std::size_t k = 1; k <= b; ++k) {
      auto [bi, bj] = plan.origin(k);
      bool covers = bi <= cell_row && cell_row <= bi + 2 && bj <= cell_col && cell_col <= bj + 2;
      std::size_t lr = covers ? cell_row - bi : 0;  // local 0-based row of the flip
      std::size_t lc = covers ? cell_col - bj : 0;
      if (covers) ++covering;

      std::array<std::array<bool, 3>, 3> diff{};
      std::size_t block_changed = 0;
      for (std::size_t r = 0; r < 3; ++r) {
        std::size_t ell = 3 * (k - 1) + r;  // 0-based column slot
        for (std::size_t j = 0; j < 3; ++j)
          if (base.columns[ell][j] != flipped.columns[ell][j]) {
            diff[j][r] = true;  // C entry (row j, local col r)
            ++block_changed;
          }
      }
      changed_elems += block_changed;
      for (std::size_t j = 0; j < 3; ++j) {
        bool row_changed = diff[j][0] || diff[j][1] || diff[j][2];
        if (row_changed) ++changed_rows;
        if (!covers && row_changed) ok = false;
        if (covers && row_changed && j != lr) ok = false;
      }
      if (covers) {
        // Expected: row lr changed exactly at the two columns != lc.
        for (std::size_t r = 0; r < 3; ++r)
          if (diff[lr][r] != (r != lc)) ok = false;
      }
    }

    if (!ok) ++rep.structural_violations;
    row_sum += static_cast<double>(changed_rows) / (3.0 * covering);
    elem_sum += static_cast<double>(changed_elems) / (9.0 * covering);
  }

  rep.mean_row_diffusion = row_sum / static_cast<double>(trials);
  rep.mean_element_diffusion = elem_sum / static_cast<double>(trials);
  return rep;
}

namespace {

inline int bit_at(ByteView stream, std::size_t i) {
  return (stream[i >> 3] >> (7 - (i & 7))) & 1;
}

}  // namespace

double regularized_gamma_q(double a, double x) {
  if (x < 0.0 || a <= 0.0) throw Error(Errc::config, "gamma_q domain");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) {
    // Lower series: P(a,x) = x^a e^-x / Gamma(a) * sum x^k / (a+1)...(a+k).
    double ap = a, sum = 1.0 / a, del = sum;
    for (int i = 0; i < 1000; ++i) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
    }
    double p = sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    return 1.0 - p;
  }
  // Upper continued fraction (modified Lentz).
  double b = x + 1.0 - a, c = 1e308, d = 1.0 / b, h = d;
  for (int i = 1; i <= 1000; ++i) {
    double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < 1e-300) d = 1e-300;
    c = b + an / c;
    if (std::fabs(c) < 1e-300) c = 1e-300;
    d = 1.0 / d;
    double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

namespace {

void check_stream(ByteView stream, std::size_t bit_count, std::size_t min_bits) {
  if (bit_count > stream.size() * 8)
    throw Error(Errc::bad_length, "bit count exceeds stream size");
  if (bit_count < min_bits)
    throw Error(Errc::insufficient_bits,
                "need at least " + std::to_string(min_bits) + " bits");
}

}  // namespace

double monobit_p(ByteView stream, std::size_t bit_count) {
  check_stream(stream, bit_count, 1);
  double n = static_cast<double>(bit_count);
  std::size_t ones = 0;
  for (std::size_t i = 0; i < bit_count; ++i) ones += bit_at(stream, i);
  // S = ones - zeros.
  double s = 2.0 * static_cast<double>(ones) - n;
  return std::erfc(std::fabs(s) / std::sqrt(2.0 * n));
}

double runs_p(ByteView stream, std::size_t bit_count) {
  check_stream(stream, bit_count, 2);
  double n = static_cast<double>(bit_count);
  std::size_t ones = 0;
  for (std::size_t i = 0; i < bit_count; ++i) ones += bit_at(stream, i);
  double pi = static_cast<double>(ones) / n;
  if (std::fabs(pi - 0.5) >= 2.0 / std::sqrt(n)) return 0.0;
  std::size_t v = 1;
  for (std::size_t i = 0; i + 1 < bit_count; ++i)
    if (bit_at(stream, i) != bit_at(stream, i + 1)) ++v;
  double vn = static_cast<double>(v);
  return std::erfc(std::fabs(vn - 2.0 * n * pi * (1.0 - pi)) /
                   (2.0 * std::sqrt(2.0 * n) * pi * (1.0 - pi)));
}

double poker4_p(ByteView stream, std::size_t bit_count) {
  check_stream(stream, bit_count, 4);
  std::size_t k = bit_count / 4;
  std::array<std::size_t, 16> f{};
  for (std::size_t t = 0; t < k; ++t) {
    int hand = 0;
    for (std::size_t b = 0; b < 4; ++b) hand = hand << 1 | bit_at(stream, 4 * t + b);
    ++f[hand];
  }
  double x = 0.0;
  for (auto c : f) x += static_cast<double>(c) * static_cast<double>(c);
  x = x * 16.0 / static_cast<double>(k) - static_cast<double>(k);
  return regularized_gamma_q(15.0 / 2.0, x / 2.0);
}

RandomnessReport randomness_suite(ByteView stream, std::size_t bit_count) {
  check_stream(stream, bit_count, 2000);
  RandomnessReport r;
  r.bit_count = bit_count;
  r.p_monobit = monobit_p(stream, bit_count);
  r.p_runs = runs_p(stream, bit_count);
  r.p_poker4 = poker4_p(stream, bit_count);
  return r;
}

std::vector<std::pair<std::size_t, std::size_t>> duplicate_scan(
    std::span<const std::array<Fe, 3>> vectors) {
  std::map<std::array<Fe, 3>, std::vector<std::size_t>> seen;
  for (std::size_t i = 0; i < vectors.size(); ++i) seen[vectors[i]].push_back(i);
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& [vec, idx] : seen)
    for (std::size_t a = 0; a + 1 < idx.size(); ++a)
      for (std::size_t b = a + 1; b < idx.size(); ++b) out.emplace_back(idx[a], idx[b]);
  return out;
}

double expected_duplicates(std::size_t n, u64 p) {
  double space = std::pow(static_cast<double>(p), 3.0);
  return static_cast<double>(n) * static_cast<double>(n) / (2.0 * space);
}

OpCounters count_ops(std::size_t m, std::size_t n) {
  SsmIndexPlan plan = plan_indices(m, n);
  OpCounters ops;
  for (std::size_t k = 1; k <= plan.block_count(); ++k) {
    // 9 output entries, each a 4-term multiply-accumulate (3 for S*V plus 1
    // for Delta*U, counted uniformly whether or not Delta vanishes).
    ops.field_mults += 36;
    ops.field_adds += 36;
    ops.hmac_calls += 9;
  }
  return ops;
}

namespace {

// Greedy row stacking: returns true when three independent S rows were found,
// filling s3/c3 with the corresponding rows of the known and observed blocks
// and recording which (pair, row) indices were consumed.
bool stack_rows(const std::vector<Block>& s_blocks, const std::vector<Block>& obs_blocks,
                Block& s3, Block& c3, std::vector<std::pair<std::size_t, std::size_t>>& used,
                const FieldCtx& ctx) {
  struct Unit {
    std::array<Fe, 3> row;  // lead coefficient normalized to 1
    std::size_t lead;
  };
  std::vector<Unit> units;  // ascending by lead, so one elimination pass works
  std::size_t have = 0;
  for (std::size_t t = 0; t < s_blocks.size() && have < 3; ++t) {
    for (std::size_t r = 0; r < 3 && have < 3; ++r) {
      std::array<Fe, 3> cand{s_blocks[t].at(r, 0), s_blocks[t].at(r, 1), s_blocks[t].at(r, 2)};
      std::array<Fe, 3> red = cand;
      for (const Unit& u : units) {
        Fe factor = red[u.lead];
        if (factor == 0) continue;
        for (std::size_t q = u.lead; q < 3; ++q)
          red[q] = ctx.sub(red[q], ctx.mul(factor, u.row[q]));
      }
      std::size_t lead = 0;
      while (lead < 3 && red[lead] == 0) ++lead;
      if (lead == 3) continue;  // dependent row
      Fe inv = ctx.inv(red[lead]);
      for (std::size_t q = 0; q < 3; ++q) red[q] = ctx.mul(red[q], inv);
      auto pos = units.begin();
      while (pos != units.end() && pos->lead < lead) ++pos;
      units.insert(pos, Unit{red, lead});
      for (std::size_t q = 0; q < 3; ++q) {
        s3.at(have, q) = cand[q];
        c3.at(have, q) = obs_blocks[t].at(r, q);
      }
      used.emplace_back(t, r);
      ++have;
    }
  }
  return have == 3;
}

}  // namespace

KpaReport kpa_probe(std::size_t num_pairs, bool with_offsets, std::size_t trials,
                    const FieldCtx& ctx, RandomSource& rng) {
  if (num_pairs < 3) throw Error(Errc::config, "kpa probe needs at least 3 pairs");
  KpaReport rep;
  rep.trials = trials;
  std::vector<Fe> residuals;

  for (std::size_t trial = 0; trial < trials; ++trial) {
    SharedVector shared;
    for (auto& k : shared.k) k = rng.uniform(1, ctx.p() - 1);
    KeyMatrices km = build_key_matrices(shared, ctx);
    DerivedKeys keys{};
    std::array<std::uint8_t, 16> nonce{};
    if (with_offsets) {
      std::array<std::uint8_t, 32> salt;
      rng.fill(salt);
      rng.fill(nonce);
      keys = derive_keys(shared, salt, ctx);
    }

    for (std::size_t attempt = 0;; ++attempt) {
      std::vector<Block> s_blocks(num_pairs), obs_blocks(num_pairs);
      for (std::size_t t = 0; t < num_pairs; ++t) {
        for (auto& e : s_blocks[t].e) e = rng.uniform(0, ctx.p() - 1);
        Block c = mat_mul(s_blocks[t], km.v, ctx);  // generic position: Delta = 0
        if (with_offsets) {
          for (std::size_t r = 0; r < 3; ++r) {
            u64 ell = 3 * t + r + 1;
            auto off = column_offset(keys, nonce, ell, ctx);
            for (std::size_t j = 0; j < 3; ++j) c.at(j, r) = ctx.add(c.at(j, r), off[j]);
          }
        }
        obs_blocks[t] = c;
      }

      Block s3, c3;
      std::vector<std::pair<std::size_t, std::size_t>> used;
      if (!stack_rows(s_blocks, obs_blocks, s3, c3, used, ctx)) {
        ++rep.singular_retries;
        if (attempt > 64) throw Error(Errc::singular_matrix, "kpa probe cannot find 3 independent rows");
        continue;
      }
      Block v_hat = mat_mul(mat_inv(s3, ctx), c3, ctx);
      if (v_hat == km.v) ++rep.recovered;
      if (with_offsets) {
        // Rows consumed by the solve fit exactly and would contribute
        // identically-zero residuals; only held-out rows are informative.
        for (std::size_t t = 0; t < num_pairs; ++t) {
          Block pred = mat_mul(s_blocks[t], v_hat, ctx);
          Block diff = mat_sub(obs_blocks[t], pred, ctx);
          for (std::size_t r = 0; r < 3; ++r) {
            if (std::find(used.begin(), used.end(), std::make_pair(t, r)) != used.end())
              continue;
            for (std::size_t q = 0; q < 3; ++q) residuals.push_back(diff.at(r, q));
          }
        }
      }
      break;
    }
  }

  if (with_offsets && !residuals.empty()) {
    EntropyReport er = entropy(residuals);
    rep.residual_samples = er.n_values;
    rep.residual_entropy = er.h_bits;
    rep.residual_entropy_max = er.h_max;
  }
  return rep;
}

}  // namespace pvc
