#pragma once

#include "pvc/codec.hpp"
#include "pvc/keyexchange.hpp"

namespace pvc {

inline constexpr std::uint8_t kIndexingStride3 = 0x01;
inline constexpr std::uint8_t kIndexingExplicit = 0x02;

struct Header {
  std::uint8_t version = 1;
  u64 p = 0;
  std::array<Fe, 3> g{};
  std::array<Fe, 3> sender_public{};
  std::array<std::uint8_t, 32> salt{};
  std::array<std::uint8_t, 16> nonce{};
  std::uint16_t rows = 0;
  std::uint16_t cols = 0;
  std::uint32_t msg_len = 0;
  std::uint16_t start_row = 1;
  std::uint16_t start_col = 1;
  std::uint8_t indexing_rule = kIndexingStride3;
  // Present only when indexing_rule == kIndexingExplicit.
  std::vector<std::uint16_t> explicit_row_tops;
  std::vector<std::uint16_t> explicit_col_tops;

  bool operator==(const Header&) const = default;
};

// Columns are the c-tilde_ell vectors in ell order, ell = 1..3B.
struct Ciphertext {
  Header header;
  std::vector<std::array<Fe, 3>> columns;

  bool operator==(const Ciphertext&) const = default;
};

struct EncryptOptions {
  bool apply_offsets = true;          // stage 2 keystream on/off (test hook)
  MaskMode mask_mode = MaskMode::reduce;
  const SsmIndexPlan* custom_plan = nullptr;  // emits indexing_rule 0x02
};

struct DecryptOptions {
  bool apply_offsets = true;
  MaskMode mask_mode = MaskMode::reduce;
};

// Single 3x3 step: C = S*V + Delta(i,j)*U. (i, j) are the block's 1-based
// master tops; Delta is the identity exactly when i == j.
Block encrypt_block(const Block& s, std::size_t i, std::size_t j, const KeyMatrices& km,
                    const FieldCtx& ctx);
Block decrypt_block(const Block& c, std::size_t i, std::size_t j, const KeyMatrices& km,
                    const FieldCtx& ctx);

// Full pipeline: embed -> mask -> per-block encrypt -> column offsets.
// Requires p > 255 so octet embedding is injective mod p.
Ciphertext encrypt(ByteView msg, const PrimitiveVector& g,
                   const std::array<Fe, 3>& sender_public, const SharedVector& g_shared,
                   const SessionParams& session, const FieldCtx& ctx,
                   const EncryptOptions& opts = {});

// Inverse pipeline; re-derives the shared vector from the header's g^a and
// the receiver secret. Throws Error(overlap_mismatch) on tampering detected
// by block-overlap disagreement, Error(parse) on malformed headers.
Bytes decrypt(const Ciphertext& ct, u64 receiver_secret, const DecryptOptions& opts = {});

// Wire format: "PVC1" || header || columns, all integers big-endian, field
// elements octet_len(p) wide and canonical (< p).
Bytes serialize(const Ciphertext& ct);
Ciphertext deserialize(ByteView data);  // Error(parse) carries a byte offset

// Header sanity plus the index plan it implies.
SsmIndexPlan validate_header(const Header& h);

SessionParams random_session(std::uint16_t rows, std::uint16_t cols, std::uint16_t start_row,
                             std::uint16_t start_col, RandomSource& rng);

}  // namespace pvc
