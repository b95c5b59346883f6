#include "pvc/cipher.hpp"

#include <future>
#include <set>
#include <thread>

#include "doctest.h"
#include "pvc/errors.hpp"
#include "pvc/kat.hpp"

using namespace pvc;

namespace {

struct Demo {
  FieldCtx ctx;
  PrimitiveVector g;
  EphemeralKeypair kp_a;
  EphemeralKeypair kp_b;
  SharedVector shared;
  SessionParams session;
  Bytes msg;

  Demo()
      : ctx(kat::kDemoPrime),
        g(PrimitiveVector::validated(kat::kDemoGenerators, ctx)),
        kp_a(EphemeralKeypair::from_secret(g, kat::kDemoSecretA, ctx)),
        kp_b(EphemeralKeypair::from_secret(g, kat::kDemoSecretB, ctx)) {
    shared = derive_shared(kp_a, kp_b.public_vec, ctx);
    session.salt.fill(0x5a);
    session.nonce.fill(0xc3);
    session.rows = kat::kDemoRows;
    session.cols = kat::kDemoCols;
    session.start_row = kat::kDemoStartRow;
    session.start_col = kat::kDemoStartCol;
    msg.assign(kat::kDemoMessage.begin(), kat::kDemoMessage.end());
  }

  Ciphertext encrypt_msg(const EncryptOptions& opts = {}) const {
    return encrypt(msg, g, kp_a.public_vec, shared, session, ctx, opts);
  }
};

}  // namespace

TEST_CASE("block transform reproduces the worked 8x10 table") {
  FieldCtx ctx(kat::kDemoPrime);
  KeyMatrices km = build_key_matrices(SharedVector{{10509, 11849, 10836}}, ctx);

  auto vectors = kat::demo_block_vectors();
  REQUIRE(vectors.size() == 12);
  std::size_t diagonal = 0;
  for (const auto& v : vectors) {
    Block s, want;
    std::copy(v.s.begin(), v.s.end(), s.e.begin());
    std::copy(v.c.begin(), v.c.end(), want.e.begin());
    Block c = encrypt_block(s, v.i, v.j, km, ctx);
    CHECK(c == want);
    CHECK(decrypt_block(c, v.i, v.j, km, ctx) == s);
    if (v.i == v.j) ++diagonal;
  }
  CHECK(diagonal == 2);  // blocks (1,1) and (4,4)

  CHECK(vectors[0].i == 1);
  CHECK(vectors[0].j == 1);
  CHECK(vectors[0].c[0] == 2091);
}

TEST_CASE("demo message round trip") {
  Demo d;
  Ciphertext ct = d.encrypt_msg();
  CHECK(ct.header.msg_len == 34);
  CHECK(ct.columns.size() == 36);
  for (const auto& col : ct.columns)
    for (Fe x : col) CHECK(x < d.ctx.p());

  Bytes out = decrypt(ct, kat::kDemoSecretB);
  CHECK(out == d.msg);
}

TEST_CASE("round trips across shapes, start cells, offsets and mask modes") {
  Demo d;
  SeededRandom rng(71);
  const std::pair<std::uint16_t, std::uint16_t> shapes[] = {{5, 7}, {8, 10}, {12, 23}, {3, 3}};
  for (auto [m, n] : shapes) {
    for (int t = 0; t < 25; ++t) {
      std::uint16_t sr = static_cast<std::uint16_t>(rng.uniform(1, m));
      std::uint16_t sc = static_cast<std::uint16_t>(rng.uniform(1, n));
      SessionParams sp = random_session(m, n, sr, sc, rng);
      std::size_t cap = std::size_t(m) * n - (std::size_t(sr - 1) * n + (sc - 1));
      Bytes msg(rng.uniform(0, cap));
      rng.fill(msg);

      EncryptOptions eo;
      DecryptOptions dopt;
      eo.apply_offsets = dopt.apply_offsets = (t % 2 == 0);
      eo.mask_mode = dopt.mask_mode = (t % 4 < 2) ? MaskMode::reduce : MaskMode::reject;

      Ciphertext ct = encrypt(msg, d.g, d.kp_a.public_vec, d.shared, sp, d.ctx, eo);
      CHECK(decrypt(ct, kat::kDemoSecretB, dopt) == msg);
    }
  }
}

TEST_CASE("empty and full-capacity messages round trip") {
  Demo d;
  SessionParams sp = d.session;
  sp.start_row = sp.start_col = 1;

  Bytes empty;
  Ciphertext ct = encrypt(empty, d.g, d.kp_a.public_vec, d.shared, sp, d.ctx);
  CHECK(decrypt(ct, kat::kDemoSecretB).empty());

  Bytes full(80);
  for (std::size_t t = 0; t < full.size(); ++t) full[t] = static_cast<std::uint8_t>(t * 3);
  ct = encrypt(full, d.g, d.kp_a.public_vec, d.shared, sp, d.ctx);
  CHECK(decrypt(ct, kat::kDemoSecretB) == full);
}

TEST_CASE("encryption is deterministic in the session parameters") {
  Demo d;
  CHECK(serialize(d.encrypt_msg()) == serialize(d.encrypt_msg()));

  SessionParams other = d.session;
  other.nonce[0] ^= 1;
  Ciphertext ct2 = encrypt(d.msg, d.g, d.kp_a.public_vec, d.shared, other, d.ctx);
  CHECK(ct2.columns != d.encrypt_msg().columns);
}

TEST_CASE("column offsets separate cleanly from the block stage") {
  Demo d;
  EncryptOptions off;
  off.apply_offsets = false;
  Ciphertext plain = d.encrypt_msg(off);
  Ciphertext with = d.encrypt_msg();
  REQUIRE(plain.columns.size() == with.columns.size());

  DerivedKeys keys = derive_keys(d.shared, d.session.salt, d.ctx);
  for (std::size_t ell = 1; ell <= plain.columns.size(); ++ell) {
    auto off_vec = column_offset(keys, d.session.nonce, ell, d.ctx);
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(with.columns[ell - 1][j] == d.ctx.add(plain.columns[ell - 1][j], off_vec[j]));
  }
}

TEST_CASE("per-block encryption on worker threads matches the pipeline") {
  Demo d;
  DerivedKeys keys = derive_keys(d.shared, d.session.salt, d.ctx);
  KeyMatrices km = build_key_matrices(d.shared, d.ctx);
  SsmIndexPlan plan = plan_indices(d.session.rows, d.session.cols);
  MatrixFp master = embed_message(d.msg, d.session.rows, d.session.cols, d.session.start_row,
                                  d.session.start_col, keys);
  MatrixFp masked =
      mat_add(master, mask_matrix(keys, d.session.rows, d.session.cols, d.ctx), d.ctx);

  std::size_t b = plan.block_count();
  std::vector<std::array<Fe, 3>> columns(3 * b);
  std::vector<std::future<void>> work;
  for (std::size_t w = 0; w < 4; ++w) {
    work.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t k = 1 + w; k <= b; k += 4) {
        auto [i, j] = plan.origin(k);
        Block c = encrypt_block(extract_block(masked, i, j), i, j, km, d.ctx);
        for (std::size_t r = 1; r <= 3; ++r) {
          u64 ell = 3 * (k - 1) + r;
          auto off = column_offset(keys, d.session.nonce, ell, d.ctx);
          for (std::size_t t = 0; t < 3; ++t)
            columns[ell - 1][t] = d.ctx.add(c.at(t, r - 1), off[t]);
        }
      }
    }));
  }
  for (auto& f : work) f.get();

  CHECK(columns == d.encrypt_msg().columns);
}

TEST_CASE("wire format round trips") {
  Demo d;
  Ciphertext ct = d.encrypt_msg();
  Bytes wire = serialize(ct);
  CHECK(wire.size() == 86 + 36 * 6);
  CHECK(deserialize(wire) == ct);

  // Explicit plans survive the trip too.
  SsmIndexPlan plan = explicit_plan({1, 2, 4, 6}, {1, 4, 7, 8}, 8, 10);
  EncryptOptions eo;
  eo.custom_plan = &plan;
  Ciphertext ct2 = d.encrypt_msg(eo);
  CHECK(ct2.header.indexing_rule == kIndexingExplicit);
  CHECK(ct2.header.explicit_row_tops == std::vector<std::uint16_t>{1, 2, 4, 6});
  Ciphertext back = deserialize(serialize(ct2));
  CHECK(back == ct2);
  CHECK(decrypt(back, kat::kDemoSecretB) == d.msg);
}

TEST_CASE("wire format rejects malformed input") {
  Demo d;
  Bytes wire = serialize(d.encrypt_msg());

  auto expect_parse = [](Bytes bad) {
    try {
      deserialize(bad);
      FAIL("expected throw");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::parse);
    }
  };

  SUBCASE("bad magic") {
    Bytes bad = wire;
    bad[0] = 'Q';
    expect_parse(bad);
  }
  SUBCASE("unsupported version") {
    Bytes bad = wire;
    bad[4] = 2;
    expect_parse(bad);
  }
  SUBCASE("composite p") {
    Bytes bad = wire;
    bad[12] = 0x39;  // p = 12345
    expect_parse(bad);
  }
  SUBCASE("non-canonical element") {
    Bytes bad = wire;
    bad[86] = 0xff;
    bad[87] = 0xff;
    expect_parse(bad);
  }
  SUBCASE("truncation at every prefix length") {
    for (std::size_t len : {0ul, 3ul, 4ul, 42ul, 85ul, wire.size() - 1}) {
      Bytes bad(wire.begin(), wire.begin() + len);
      expect_parse(bad);
    }
  }
  SUBCASE("trailing byte") {
    Bytes bad = wire;
    bad.push_back(0);
    expect_parse(bad);
  }
  SUBCASE("parse errors carry the byte offset") {
    Bytes bad = wire;
    bad[86] = 0xff;
    bad[87] = 0xff;
    try {
      deserialize(bad);
      FAIL("expected throw");
    } catch (const Error& e) {
      CHECK(e.pos_a() == 86);
    }
  }
}

TEST_CASE("header validation") {
  Demo d;
  Header good = d.encrypt_msg().header;
  CHECK(validate_header(good) == plan_indices(8, 10));

  auto expect_parse = [](Header h) {
    try {
      validate_header(h);
      FAIL("expected throw");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::parse);
    }
  };

  Header h = good;
  h.version = 2;
  expect_parse(h);

  h = good;
  h.p = 12345;  // composite
  expect_parse(h);

  h = good;
  h.p = 251;  // too small for octets
  expect_parse(h);

  h = good;
  h.g[1] = 0;
  expect_parse(h);

  h = good;
  h.sender_public[0] = 12347;
  expect_parse(h);

  h = good;
  h.rows = 2;
  expect_parse(h);

  h = good;
  h.start_col = 11;
  expect_parse(h);

  h = good;
  h.msg_len = 70;  // only 68 cells from (2,3)
  expect_parse(h);

  h = good;
  h.indexing_rule = 0x03;
  expect_parse(h);

  h = good;
  h.explicit_row_tops = {1, 4, 6};  // tops alongside stride rule
  expect_parse(h);

  h = good;
  h.indexing_rule = kIndexingExplicit;
  h.explicit_row_tops = {1, 4};  // leaves rows uncovered
  h.explicit_col_tops = {1, 4, 7, 8};
  expect_parse(h);
}

TEST_CASE("tampered overlap column is detected deterministically") {
  Demo d;
  Ciphertext ct = d.encrypt_msg();
  // Block 5 sits at tops (4,1); its third row is master row 6, also covered
  // by block 9 at tops (6,1). Bumping element 3 of one of block 5's columns
  // changes that shared row on one side only.
  Ciphertext bad = ct;
  bad.columns[12][2] = d.ctx.add(bad.columns[12][2], 1);
  try {
    decrypt(bad, kat::kDemoSecretB);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::overlap_mismatch);
    CHECK(e.pos_a() == 6);
  }
}

TEST_CASE("wrong receiver secret fails closed") {
  Demo d;
  Ciphertext ct = d.encrypt_msg();
  bool failed_closed = false;
  try {
    failed_closed = decrypt(ct, 9) != d.msg;
  } catch (const Error&) {
    failed_closed = true;
  }
  CHECK(failed_closed);

  CHECK_THROWS_AS(decrypt(ct, 0), Error);
  CHECK_THROWS_AS(decrypt(ct, 12346), Error);
}

TEST_CASE("offsets flag mismatch fails closed") {
  Demo d;
  Ciphertext ct = d.encrypt_msg();
  DecryptOptions no_off;
  no_off.apply_offsets = false;
  bool failed_closed = false;
  try {
    failed_closed = decrypt(ct, kat::kDemoSecretB, no_off) != d.msg;
  } catch (const Error&) {
    failed_closed = true;
  }
  CHECK(failed_closed);
}

TEST_CASE("small primes cannot carry octet payloads") {
  FieldCtx ctx(251);
  PrimitiveVector g;
  g.g = {6, 11, 13};
  SessionParams sp;
  sp.rows = sp.cols = 3;
  Bytes msg{1, 2, 3};
  try {
    encrypt(msg, g, {2, 3, 5}, SharedVector{{1, 2, 3}}, sp, ctx);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::config);
  }
}

TEST_CASE("random sessions draw fresh salt and nonce") {
  SeededRandom rng(73);
  SessionParams a = random_session(8, 10, 1, 1, rng);
  SessionParams b = random_session(8, 10, 1, 1, rng);
  CHECK(a.salt != b.salt);
  CHECK(a.nonce != b.nonce);
  CHECK(a.rows == 8);
  CHECK(a.cols == 10);
}
