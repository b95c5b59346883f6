#include "pvc/kdf.hpp"

#include <algorithm>

#include "pvc/errors.hpp"

namespace pvc {

namespace {

constexpr std::string_view kLabelMask = "PVC/mask";
constexpr std::string_view kLabelCols = "PVC/cols";
constexpr std::string_view kLabelMac = "PVC/mac";
constexpr std::string_view kLabelPad = "PVC/pad";

ByteView label_view(std::string_view s) {
  return ByteView(reinterpret_cast<const std::uint8_t*>(s.data()), s.size());
}

Digest expand32(const Digest& prk, std::string_view label) {
  Bytes okm = hkdf_expand(prk, label_view(label), 32);
  Digest d;
  std::copy(okm.begin(), okm.end(), d.begin());
  return d;
}

// Lazily extends a keyed counter stream and hands out words.
class StreamReader {
 public:
  explicit StreamReader(const Digest& key) : key_(key) {}

  void take(std::uint8_t* out, std::size_t n) {
    while (n > 0) {
      if (pos_ == buf_.size()) refill();
      std::size_t chunk = std::min(n, buf_.size() - pos_);
      std::copy(buf_.begin() + pos_, buf_.begin() + pos_ + chunk, out);
      pos_ += chunk;
      out += chunk;
      n -= chunk;
    }
  }

 private:
  void refill() {
    Digest block = hmac_sha256(key_, i2osp(counter_++, 8));
    buf_.assign(block.begin(), block.end());
    pos_ = 0;
  }

  Digest key_;
  Bytes buf_;
  std::size_t pos_ = 0;
  u64 counter_ = 0;
};

}  // namespace

Digest hkdf_extract(ByteView salt, ByteView ikm) {
  static const std::uint8_t zeros[32] = {};
  return hmac_sha256(salt.empty() ? ByteView(zeros, 32) : salt, ikm);
}

Bytes hkdf_expand(const Digest& prk, ByteView info, std::size_t out_len) {
  if (out_len > 255 * 32)
    throw Error(Errc::bad_length, "hkdf_expand output length exceeds 255*HashLen");
  Bytes out;
  out.reserve(out_len);
  Bytes t;
  std::uint8_t counter = 1;
  while (out.size() < out_len) {
    Bytes msg = t;
    append(msg, info);
    msg.push_back(counter++);
    Digest d = hmac_sha256(prk, msg);
    t.assign(d.begin(), d.end());
    std::size_t want = std::min<std::size_t>(32, out_len - out.size());
    out.insert(out.end(), t.begin(), t.begin() + want);
  }
  return out;
}

Bytes encode_shared(const SharedVector& g_shared, const FieldCtx& ctx) {
  Bytes out;
  out.reserve(3 * ctx.octet_len());
  for (auto k : g_shared.k) append(out, ctx.encode_element(ctx.reduce(k)));
  return out;
}

DerivedKeys derive_keys(const SharedVector& g_shared, ByteView salt, const FieldCtx& ctx) {
  DerivedKeys keys;
  keys.prk = hkdf_extract(salt, encode_shared(g_shared, ctx));
  keys.k_mask = expand32(keys.prk, kLabelMask);
  keys.k_cols = expand32(keys.prk, kLabelCols);
  keys.k_mac = expand32(keys.prk, kLabelMac);
  keys.k_pad = expand32(keys.prk, kLabelPad);
  return keys;
}

Bytes ctr_stream(const Digest& key, std::size_t out_len) {
  Bytes out(out_len);
  StreamReader reader(key);
  reader.take(out.data(), out_len);
  return out;
}

MatrixFp mask_matrix(const DerivedKeys& keys, std::size_t m, std::size_t n, const FieldCtx& ctx,
                     MaskMode mode) {
  if (m == 0 || n == 0) throw Error(Errc::config, "mask matrix shape must be positive");
  MatrixFp r(m, n);
  StreamReader reader(keys.k_mask);
  std::size_t ol = ctx.octet_len();
  Bytes word(ol);
  for (std::size_t t = 0; t < m * n; ++t) {
    reader.take(word.data(), ol);
    u64 x = os2ip(word);
    if (mode == MaskMode::reject) {
      while (x >= ctx.p()) {
        reader.take(word.data(), ol);
        x = os2ip(word);
      }
      r.e[t] = x;
    } else {
      r.e[t] = ctx.reduce(x);
    }
  }
  return r;
}

std::array<Fe, 3> column_offset(const DerivedKeys& keys, ByteView nonce, u64 ell,
                                const FieldCtx& ctx) {
  std::array<Fe, 3> r{};
  Bytes msg(nonce.begin(), nonce.end());
  append(msg, i2osp(ell, 8));
  msg.push_back(0);
  for (std::uint8_t j = 1; j <= 3; ++j) {
    msg.back() = j;
    Digest d = hmac_sha256(keys.k_cols, msg);
    r[j - 1] = ctx.reduce_bytes(d);
  }
  return r;
}

Bytes offset_keystream(const DerivedKeys& keys, ByteView nonce, std::size_t num_columns) {
  Bytes out;
  out.reserve(num_columns * 3 * 32);
  Bytes msg(nonce.begin(), nonce.end());
  append(msg, i2osp(0, 8));
  msg.push_back(0);
  std::size_t ell_at = nonce.size();
  for (u64 ell = 1; ell <= num_columns; ++ell) {
    Bytes ell_enc = i2osp(ell, 8);
    std::copy(ell_enc.begin(), ell_enc.end(), msg.begin() + ell_at);
    for (std::uint8_t j = 1; j <= 3; ++j) {
      msg.back() = j;
      Digest d = hmac_sha256(keys.k_cols, msg);
      out.insert(out.end(), d.begin(), d.end());
    }
  }
  return out;
}

Bytes padding_bytes(const DerivedKeys& keys, std::size_t count) {
  return ctr_stream(keys.k_pad, count);
}

}  // namespace pvc
