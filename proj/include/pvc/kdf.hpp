#pragma once

#include <array>
#include <string_view>

#include "pvc/field.hpp"
#include "pvc/hmac.hpp"
#include "pvc/matrix.hpp"

namespace pvc {

// HKDF (RFC 5869) over HMAC-SHA-256.
Digest hkdf_extract(ByteView salt, ByteView ikm);  // empty salt = 32 zero octets
Bytes hkdf_expand(const Digest& prk, ByteView info, std::size_t out_len);

struct DerivedKeys {
  Digest prk;
  Digest k_mask;  // masking stream key
  Digest k_cols;  // per-column offset key
  Digest k_mac;   // handshake confirmation MAC key
  Digest k_pad;   // padding stream key
};

// Per-session public material carried in the ciphertext header.
struct SessionParams {
  std::array<std::uint8_t, 32> salt{};
  std::array<std::uint8_t, 16> nonce{};
  std::uint16_t rows = 0;
  std::uint16_t cols = 0;
  std::uint16_t start_row = 1;  // 1-based embedding start
  std::uint16_t start_col = 1;
};

// Fixed-width encoding k1 || k2 || k3, octet_len bytes each.
Bytes encode_shared(const SharedVector& g_shared, const FieldCtx& ctx);

DerivedKeys derive_keys(const SharedVector& g_shared, ByteView salt, const FieldCtx& ctx);

// Keyed counter stream: HMAC(key, I2OSP(t, 8)) for t = 0, 1, ...,
// concatenated and truncated to out_len octets.
Bytes ctr_stream(const Digest& key, std::size_t out_len);

// How stream words become field elements.
enum class MaskMode {
  reduce,  // word mod p (slight bias unless p is just under a power of 256)
  reject,  // skip words >= p, consuming further stream words
};

// m x n mask matrix R from the k_mask counter stream: entry (r, c) in
// row-major order takes the next octet_len-wide big-endian word.
MatrixFp mask_matrix(const DerivedKeys& keys, std::size_t m, std::size_t n, const FieldCtx& ctx,
                     MaskMode mode = MaskMode::reduce);

// Offset vector for ciphertext column ell (1-based):
//   r_j = HMAC(k_cols, nonce || I2OSP(ell, 8) || I2OSP(j, 1)) mod p,  j = 1..3.
std::array<Fe, 3> column_offset(const DerivedKeys& keys, ByteView nonce, u64 ell,
                                const FieldCtx& ctx);

// Raw 32-octet HMAC outputs feeding column_offset, before modular reduction,
// for ell = 1..num_columns and j = 1..3. This is the keystream the randomness
// battery inspects.
Bytes offset_keystream(const DerivedKeys& keys, ByteView nonce, std::size_t num_columns);

// Deterministic padding octets from k_pad.
Bytes padding_bytes(const DerivedKeys& keys, std::size_t count);

}  // namespace pvc
