#include "pvc/cipher.hpp"

#include <algorithm>

#include "pvc/errors.hpp"

namespace pvc {

namespace {

constexpr std::string_view kMagic = "PVC1";

std::size_t octet_len_for(u64 p) {
  u64 top = p - 1;
  std::size_t len = 1;
  while (top >>= 8) ++len;
  return len;
}

void put_elem(Bytes& out, Fe x, std::size_t ol) { append(out, i2osp(x, ol)); }

struct Reader {
  ByteView data;
  std::size_t at = 0;

  ByteView take(std::size_t n, const char* what) {
    if (at + n > data.size())
      throw Error(Errc::parse, std::string("truncated while reading ") + what, at);
    ByteView v = data.subspan(at, n);
    at += n;
    return v;
  }
  u64 take_uint(std::size_t n, const char* what) { return os2ip(take(n, what)); }
};

}  // namespace

Block encrypt_block(const Block& s, std::size_t i, std::size_t j, const KeyMatrices& km,
                    const FieldCtx& ctx) {
  Block c = mat_mul(s, km.v, ctx);
  if (i == j) c = mat_add(c, km.u, ctx);
  return c;
}

Block decrypt_block(const Block& c, std::size_t i, std::size_t j, const KeyMatrices& km,
                    const FieldCtx& ctx) {
  Block t = i == j ? mat_sub(c, km.u, ctx) : c;
  return mat_mul(t, km.v_inv, ctx);
}

SsmIndexPlan validate_header(const Header& h) {
  try {
    if (h.version != 1) throw Error(Errc::parse, "unsupported version");
    FieldCtx ctx(h.p);
    if (h.p <= 255) throw Error(Errc::parse, "p must exceed 255 for octet embedding");
    for (Fe x : h.g)
      if (x == 0 || x >= h.p) throw Error(Errc::parse, "generator component out of range");
    for (Fe x : h.sender_public)
      if (x == 0 || x >= h.p) throw Error(Errc::parse, "sender public component out of range");
    if (h.rows < 3 || h.cols < 3) throw Error(Errc::parse, "shape must be at least 3x3");
    if (h.start_row < 1 || h.start_row > h.rows || h.start_col < 1 || h.start_col > h.cols)
      throw Error(Errc::parse, "start position outside matrix");
    std::size_t s0 = std::size_t(h.start_row - 1) * h.cols + (h.start_col - 1);
    if (h.msg_len > std::size_t(h.rows) * h.cols - s0)
      throw Error(Errc::parse, "message length exceeds capacity from start position");
    if (h.indexing_rule == kIndexingStride3) {
      if (!h.explicit_row_tops.empty() || !h.explicit_col_tops.empty())
        throw Error(Errc::parse, "stride rule carries no explicit top lists");
      return plan_indices(h.rows, h.cols);
    }
    if (h.indexing_rule == kIndexingExplicit) {
      std::vector<std::size_t> ri(h.explicit_row_tops.begin(), h.explicit_row_tops.end());
      std::vector<std::size_t> ci(h.explicit_col_tops.begin(), h.explicit_col_tops.end());
      return explicit_plan(std::move(ri), std::move(ci), h.rows, h.cols);
    }
    throw Error(Errc::parse, "unknown indexing rule");
  } catch (const Error& e) {
    if (e.code() == Errc::parse) throw;
    throw Error(Errc::parse, std::string("invalid header: ") + e.what());
  }
}

Ciphertext encrypt(ByteView msg, const PrimitiveVector& g,
                   const std::array<Fe, 3>& sender_public, const SharedVector& g_shared,
                   const SessionParams& session, const FieldCtx& ctx,
                   const EncryptOptions& opts) {
  if (ctx.p() <= 255)
    throw Error(Errc::config, "p must exceed 255 for octet embedding");
  std::size_t m = session.rows, n = session.cols;
  SsmIndexPlan plan =
      opts.custom_plan ? *opts.custom_plan : plan_indices(m, n);
  if (opts.custom_plan)
    explicit_plan(plan.row_tops, plan.col_tops, m, n);  // bounds + coverage

  DerivedKeys keys = derive_keys(g_shared, session.salt, ctx);
  MatrixFp master =
      embed_message(msg, m, n, session.start_row, session.start_col, keys);
  MatrixFp masked = mat_add(master, mask_matrix(keys, m, n, ctx, opts.mask_mode), ctx);
  KeyMatrices km = build_key_matrices(g_shared, ctx);

  Ciphertext ct;
  ct.header.version = 1;
  ct.header.p = ctx.p();
  ct.header.g = g.g;
  ct.header.sender_public = sender_public;
  ct.header.salt = session.salt;
  ct.header.nonce = session.nonce;
  ct.header.rows = session.rows;
  ct.header.cols = session.cols;
  ct.header.msg_len = static_cast<std::uint32_t>(msg.size());
  ct.header.start_row = session.start_row;
  ct.header.start_col = session.start_col;
  if (opts.custom_plan) {
    ct.header.indexing_rule = kIndexingExplicit;
    ct.header.explicit_row_tops.assign(plan.row_tops.begin(), plan.row_tops.end());
    ct.header.explicit_col_tops.assign(plan.col_tops.begin(), plan.col_tops.end());
  }

  std::size_t b = plan.block_count();
  ct.columns.resize(3 * b);
  // Each column of each block is independent given (masked, km, keys); the
  // loop order is irrelevant to the output.
  for (std::size_t k = 1; k <= b; ++k) {
    auto [i, j] = plan.origin(k);
    Block c = encrypt_block(extract_block(masked, i, j), i, j, km, ctx);
    for (std::size_t r = 1; r <= 3; ++r) {
      u64 ell = 3 * (k - 1) + r;
      std::array<Fe, 3> col{c.at(0, r - 1), c.at(1, r - 1), c.at(2, r - 1)};
      if (opts.apply_offsets) {
        auto off = column_offset(keys, ct.header.nonce, ell, ctx);
        for (std::size_t t = 0; t < 3; ++t) col[t] = ctx.add(col[t], off[t]);
      }
      ct.columns[ell - 1] = col;
    }
  }
  return ct;
}

Bytes decrypt(const Ciphertext& ct, u64 receiver_secret, const DecryptOptions& opts) {
  const Header& h = ct.header;
  SsmIndexPlan plan = validate_header(h);
  FieldCtx ctx(h.p);
  std::size_t b = plan.block_count();
  if (ct.columns.size() != 3 * b)
    throw Error(Errc::parse, "column count does not match index plan");
  for (const auto& col : ct.columns)
    for (Fe x : col)
      if (x >= h.p) throw Error(Errc::parse, "non-canonical column element");

  if (receiver_secret < 1 || receiver_secret > h.p - 2)
    throw Error(Errc::config, "receiver secret out of range");
  EphemeralKeypair own;
  own.secret = receiver_secret;
  SharedVector g_shared = derive_shared(own, h.sender_public, ctx);
  DerivedKeys keys = derive_keys(g_shared, h.salt, ctx);
  KeyMatrices km = build_key_matrices(g_shared, ctx);

  std::vector<PlacedBlock> blocks(b);
  for (std::size_t k = 1; k <= b; ++k) {
    auto [i, j] = plan.origin(k);
    Block c;
    for (std::size_t r = 1; r <= 3; ++r) {
      u64 ell = 3 * (k - 1) + r;
      std::array<Fe, 3> col = ct.columns[ell - 1];
      if (opts.apply_offsets) {
        auto off = column_offset(keys, h.nonce, ell, ctx);
        for (std::size_t t = 0; t < 3; ++t) col[t] = ctx.sub(col[t], off[t]);
      }
      for (std::size_t t = 0; t < 3; ++t) c.at(t, r - 1) = col[t];
    }
    blocks[k - 1] = PlacedBlock{i, j, decrypt_block(c, i, j, km, ctx)};
  }

  MatrixFp masked = reassemble(blocks, h.rows, h.cols);
  MatrixFp master = mat_sub(masked, mask_matrix(keys, h.rows, h.cols, ctx, opts.mask_mode), ctx);
  return extract_message(master, h.msg_len, h.start_row, h.start_col);
}

Bytes serialize(const Ciphertext& ct) {
  const Header& h = ct.header;
  std::size_t ol = octet_len_for(h.p);
  Bytes out(kMagic.begin(), kMagic.end());
  out.push_back(h.version);
  append(out, i2osp(h.p, 8));
  for (Fe x : h.g) put_elem(out, x, ol);
  for (Fe x : h.sender_public) put_elem(out, x, ol);
  append(out, ByteView(h.salt));
  append(out, ByteView(h.nonce));
  append(out, i2osp(h.rows, 2));
  append(out, i2osp(h.cols, 2));
  append_u32be(out, h.msg_len);
  append(out, i2osp(h.start_row, 2));
  append(out, i2osp(h.start_col, 2));
  out.push_back(h.indexing_rule);
  if (h.indexing_rule == kIndexingExplicit) {
    out.push_back(static_cast<std::uint8_t>(h.explicit_row_tops.size()));
    for (auto t : h.explicit_row_tops) append(out, i2osp(t, 2));
    out.push_back(static_cast<std::uint8_t>(h.explicit_col_tops.size()));
    for (auto t : h.explicit_col_tops) append(out, i2osp(t, 2));
  }
  for (const auto& col : ct.columns)
    for (Fe x : col) put_elem(out, x, ol);
  return out;
}

Ciphertext deserialize(ByteView data) {
  Reader rd{data};
  ByteView magic = rd.take(4, "magic");
  if (!std::equal(kMagic.begin(), kMagic.end(), magic.begin()))
    throw Error(Errc::parse, "bad magic", 0);
  Ciphertext ct;
  Header& h = ct.header;
  h.version = static_cast<std::uint8_t>(rd.take_uint(1, "version"));
  if (h.version != 1) throw Error(Errc::parse, "unsupported version", 4);
  h.p = rd.take_uint(8, "p");
  if (!is_prime_u64(h.p) || h.p <= 255 || h.p >= (1ull << 62))
    throw Error(Errc::parse, "p out of range or not prime", 5);
  std::size_t ol = octet_len_for(h.p);
  auto elem = [&](const char* what) {
    std::size_t at = rd.at;
    u64 x = rd.take_uint(ol, what);
    if (x >= h.p) throw Error(Errc::parse, std::string("non-canonical ") + what, at);
    return x;
  };
  for (auto& x : h.g) x = elem("generator component");
  for (auto& x : h.sender_public) x = elem("sender public component");
  ByteView salt = rd.take(32, "salt");
  std::copy(salt.begin(), salt.end(), h.salt.begin());
  ByteView nonce = rd.take(16, "nonce");
  std::copy(nonce.begin(), nonce.end(), h.nonce.begin());
  h.rows = static_cast<std::uint16_t>(rd.take_uint(2, "rows"));
  h.cols = static_cast<std::uint16_t>(rd.take_uint(2, "cols"));
  h.msg_len = static_cast<std::uint32_t>(rd.take_uint(4, "message length"));
  h.start_row = static_cast<std::uint16_t>(rd.take_uint(2, "start row"));
  h.start_col = static_cast<std::uint16_t>(rd.take_uint(2, "start col"));
  h.indexing_rule = static_cast<std::uint8_t>(rd.take_uint(1, "indexing rule"));
  if (h.indexing_rule == kIndexingExplicit) {
    std::size_t cnt = rd.take_uint(1, "row top count");
    for (std::size_t t = 0; t < cnt; ++t)
      h.explicit_row_tops.push_back(static_cast<std::uint16_t>(rd.take_uint(2, "row top")));
    cnt = rd.take_uint(1, "col top count");
    for (std::size_t t = 0; t < cnt; ++t)
      h.explicit_col_tops.push_back(static_cast<std::uint16_t>(rd.take_uint(2, "col top")));
  }
  SsmIndexPlan plan = validate_header(h);
  std::size_t b = plan.block_count();
  ct.columns.resize(3 * b);
  for (auto& col : ct.columns)
    for (auto& x : col) x = elem("column element");
  if (rd.at != data.size())
    throw Error(Errc::parse, "trailing bytes after ciphertext", rd.at);
  return ct;
}

SessionParams random_session(std::uint16_t rows, std::uint16_t cols, std::uint16_t start_row,
                             std::uint16_t start_col, RandomSource& rng) {
  SessionParams s;
  s.rows = rows;
  s.cols = cols;
  s.start_row = start_row;
  s.start_col = start_col;
  rng.fill(s.salt);
  rng.fill(s.nonce);
  return s;
}

}  // namespace pvc
