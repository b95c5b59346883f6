#include "pvc/keyexchange.hpp"

#include <algorithm>

#include "pvc/errors.hpp"
#include "pvc/kdf.hpp"

namespace pvc {

namespace {

constexpr std::string_view kMagic = "PVCSTS";
constexpr std::uint8_t kVersion = 0x01;
constexpr std::string_view kSigLabelInitiator = "PVC/sts/v1/A";
constexpr std::string_view kSigLabelResponder = "PVC/sts/v1/B";

ByteView sv(std::string_view s) {
  return ByteView(reinterpret_cast<const std::uint8_t*>(s.data()), s.size());
}

Bytes encode_publics(const std::array<Fe, 3>& pub, const FieldCtx& ctx) {
  Bytes out;
  for (Fe x : pub) append(out, ctx.encode_element(x));
  return out;
}

Bytes sig_message_initiator(const std::array<Fe, 3>& pub_a, const FieldCtx& ctx) {
  Bytes m(sv(kSigLabelInitiator).begin(), sv(kSigLabelInitiator).end());
  append(m, encode_publics(pub_a, ctx));
  return m;
}

// Responder signs both vectors, own first.
Bytes sig_message_responder(const std::array<Fe, 3>& pub_b, const std::array<Fe, 3>& pub_a,
                            const FieldCtx& ctx) {
  Bytes m(sv(kSigLabelResponder).begin(), sv(kSigLabelResponder).end());
  append(m, encode_publics(pub_b, ctx));
  append(m, encode_publics(pub_a, ctx));
  return m;
}

Bytes build_message(const std::array<Fe, 3>& pub, ByteView sig, const Digest* mac,
                    const FieldCtx& ctx) {
  Bytes out(sv(kMagic).begin(), sv(kMagic).end());
  out.push_back(kVersion);
  append(out, encode_publics(pub, ctx));
  append_u32be(out, static_cast<std::uint32_t>(sig.size()));
  append(out, sig);
  if (mac) out.insert(out.end(), mac->begin(), mac->end());
  return out;
}

struct ParsedMessage {
  std::array<Fe, 3> publics{};
  Bytes sig;
  Digest mac{};
};

ParsedMessage parse_message(ByteView msg, bool expect_mac, const FieldCtx& ctx) {
  std::size_t ol = ctx.octet_len();
  std::size_t fixed = 6 + 1 + 3 * ol + 4;
  if (msg.size() < fixed) throw Error(Errc::parse, "handshake message truncated", msg.size());
  if (!std::equal(sv(kMagic).begin(), sv(kMagic).end(), msg.begin()))
    throw Error(Errc::parse, "bad handshake magic", 0);
  if (msg[6] != kVersion) throw Error(Errc::parse, "unsupported handshake version", 6);
  ParsedMessage out;
  std::size_t at = 7;
  for (auto& x : out.publics) {
    x = os2ip(msg.subspan(at, ol));
    at += ol;
  }
  std::uint32_t sig_len = static_cast<std::uint32_t>(os2ip(msg.subspan(at, 4)));
  at += 4;
  std::size_t trailer = expect_mac ? 32 : 0;
  if (msg.size() != at + sig_len + trailer)
    throw Error(Errc::parse, "handshake message length mismatch", at);
  out.sig.assign(msg.begin() + at, msg.begin() + at + sig_len);
  at += sig_len;
  if (expect_mac) std::copy(msg.begin() + at, msg.end(), out.mac.begin());
  return out;
}

void check_peer_range(const std::array<Fe, 3>& pub, const FieldCtx& ctx) {
  for (Fe x : pub)
    if (x < 2 || x > ctx.p() - 2)
      throw Error(Errc::invalid_peer_public, "peer public component outside [2, p-2]");
}

Digest handshake_mac_key(const SharedVector& g_shared, const FieldCtx& ctx) {
  return derive_keys(g_shared, {}, ctx).k_mac;
}

}  // namespace

PrimitiveVector PrimitiveVector::validated(const std::array<u64, 3>& g, const FieldCtx& ctx) {
  for (u64 x : g)
    if (!ctx.is_primitive_root(x))
      throw Error(Errc::config, std::to_string(x) + " is not a primitive root mod " +
                                    std::to_string(ctx.p()));
  if (g[0] == g[1] || g[0] == g[2] || g[1] == g[2])
    throw Error(Errc::config, "primitive vector components must be pairwise distinct");
  return PrimitiveVector{{g[0], g[1], g[2]}};
}

EphemeralKeypair EphemeralKeypair::from_secret(const PrimitiveVector& g, u64 secret,
                                               const FieldCtx& ctx) {
  if (secret < 1 || secret > ctx.p() - 2)
    throw Error(Errc::config, "ephemeral secret outside {1, ..., p-2}");
  EphemeralKeypair kp;
  kp.secret = secret;
  for (std::size_t i = 0; i < 3; ++i) kp.public_vec[i] = ctx.pow(g.g[i], secret);
  return kp;
}

EphemeralKeypair EphemeralKeypair::generate(const PrimitiveVector& g, const FieldCtx& ctx,
                                            RandomSource& rng) {
  while (true) {
    u64 secret = rng.uniform(1, ctx.p() - 2);
    auto kp = from_secret(g, secret, ctx);
    bool ok = true;
    for (Fe x : kp.public_vec)
      if (x < 2 || x > ctx.p() - 2) ok = false;
    if (ok) return kp;
  }
}

SharedVector derive_shared(const EphemeralKeypair& own, const std::array<Fe, 3>& peer_public,
                           const FieldCtx& ctx) {
  check_peer_range(peer_public, ctx);
  SharedVector g_shared;
  for (std::size_t i = 0; i < 3; ++i) g_shared.k[i] = ctx.pow(peer_public[i], own.secret);
  return g_shared;
}

Bytes HmacSigner::sign(ByteView message) {
  Bytes m;
  append_u32be(m, static_cast<std::uint32_t>(identity_.size()));
  append(m, identity_);
  append(m, message);
  Digest d = hmac_sha256(psk_, m);
  return Bytes(d.begin(), d.end());
}

bool HmacSigner::verify(ByteView message, ByteView signature) const {
  Bytes m;
  append_u32be(m, static_cast<std::uint32_t>(identity_.size()));
  append(m, identity_);
  append(m, message);
  Digest d = hmac_sha256(psk_, m);
  return ct_equal(d, signature);
}

Bytes sts_mac_input(const std::array<Fe, 3>& initiator_public,
                    const std::array<Fe, 3>& responder_public, ByteView sig_initiator,
                    ByteView sig_responder, const FieldCtx& ctx) {
  Bytes out = encode_publics(initiator_public, ctx);
  append(out, encode_publics(responder_public, ctx));
  append_u32be(out, static_cast<std::uint32_t>(sig_initiator.size()));
  append(out, sig_initiator);
  append_u32be(out, static_cast<std::uint32_t>(sig_responder.size()));
  append(out, sig_responder);
  return out;
}

StsInitiator::StsInitiator(const FieldCtx& ctx, Signer& own_signer, const Signer& peer_verifier,
                           const EphemeralKeypair& keypair)
    : ctx_(ctx), own_(own_signer), peer_(peer_verifier), kp_(keypair) {}

Bytes StsInitiator::message1() {
  if (sent1_) throw Error(Errc::config, "message1 already sent");
  ts_.initiator_public = kp_.public_vec;
  ts_.sig_initiator = own_.sign(sig_message_initiator(kp_.public_vec, ctx_));
  sent1_ = true;
  return build_message(kp_.public_vec, ts_.sig_initiator, nullptr, ctx_);
}

Bytes StsInitiator::message3(ByteView message2) {
  if (!sent1_ || completed_) throw Error(Errc::config, "handshake out of order");
  ParsedMessage m2 = parse_message(message2, /*expect_mac=*/true, ctx_);
  check_peer_range(m2.publics, ctx_);
  if (!peer_.verify(sig_message_responder(m2.publics, kp_.public_vec, ctx_), m2.sig))
    throw Error(Errc::signature_invalid, "responder signature rejected");
  // Signature verified; only now derive the shared vector and MAC key.
  SharedVector g_shared = derive_shared(kp_, m2.publics, ctx_);
  Digest k_mac = handshake_mac_key(g_shared, ctx_);
  Bytes mac_input = sts_mac_input(kp_.public_vec, m2.publics, ts_.sig_initiator, m2.sig, ctx_);
  Digest expected = hmac_sha256(k_mac, mac_input);
  if (!ct_equal(expected, m2.mac))
    throw Error(Errc::mac_invalid, "responder MAC rejected");
  ts_.responder_public = m2.publics;
  ts_.sig_responder = m2.sig;
  ts_.mac_responder = m2.mac;
  ts_.mac_initiator = expected;  // same canonical input, same key
  shared_ = g_shared;
  completed_ = true;
  return Bytes(expected.begin(), expected.end());
}

const SharedVector& StsInitiator::shared() const {
  if (!completed_) throw Error(Errc::config, "handshake not completed");
  return shared_;
}

const StsTranscript& StsInitiator::transcript() const {
  if (!completed_) throw Error(Errc::config, "handshake not completed");
  return ts_;
}

StsResponder::StsResponder(const FieldCtx& ctx, Signer& own_signer, const Signer& peer_verifier,
                           const EphemeralKeypair& keypair)
    : ctx_(ctx), own_(own_signer), peer_(peer_verifier), kp_(keypair) {}

Bytes StsResponder::message2(ByteView message1) {
  if (sent2_) throw Error(Errc::config, "message2 already sent");
  ParsedMessage m1 = parse_message(message1, /*expect_mac=*/false, ctx_);
  check_peer_range(m1.publics, ctx_);
  if (!peer_.verify(sig_message_initiator(m1.publics, ctx_), m1.sig))
    throw Error(Errc::signature_invalid, "initiator signature rejected");
  SharedVector g_shared = derive_shared(kp_, m1.publics, ctx_);
  Digest k_mac = handshake_mac_key(g_shared, ctx_);
  ts_.initiator_public = m1.publics;
  ts_.responder_public = kp_.public_vec;
  ts_.sig_initiator = m1.sig;
  ts_.sig_responder = own_.sign(sig_message_responder(kp_.public_vec, m1.publics, ctx_));
  Bytes mac_input =
      sts_mac_input(m1.publics, kp_.public_vec, m1.sig, ts_.sig_responder, ctx_);
  expected_mac_ = hmac_sha256(k_mac, mac_input);
  ts_.mac_responder = expected_mac_;
  shared_ = g_shared;
  sent2_ = true;
  return build_message(kp_.public_vec, ts_.sig_responder, &expected_mac_, ctx_);
}

void StsResponder::finish(ByteView message3) {
  if (!sent2_ || completed_) throw Error(Errc::config, "handshake out of order");
  if (message3.size() != 32)
    throw Error(Errc::parse, "confirmation message must be 32 octets", message3.size());
  if (!ct_equal(expected_mac_, message3))
    throw Error(Errc::mac_invalid, "initiator MAC rejected");
  std::copy(message3.begin(), message3.end(), ts_.mac_initiator.begin());
  completed_ = true;
}

const SharedVector& StsResponder::shared() const {
  if (!completed_) throw Error(Errc::config, "handshake not completed");
  return shared_;
}

const StsTranscript& StsResponder::transcript() const {
  if (!completed_) throw Error(Errc::config, "handshake not completed");
  return ts_;
}

void MessageQueue::send(Bytes msg) {
  {
    std::lock_guard lock(mu_);
    q_.push_back(std::move(msg));
  }
  cv_.notify_one();
}

Bytes MessageQueue::recv() {
  std::unique_lock lock(mu_);
  cv_.wait(lock, [&] { return !q_.empty(); });
  Bytes msg = std::move(q_.front());
  q_.pop_front();
  return msg;
}

HandshakeOutcome sts_handshake(StsInitiator& a, StsResponder& b, DuplexChannel& ch) {
  ch.to_responder.send(a.message1());
  ch.to_initiator.send(b.message2(ch.to_responder.recv()));
  ch.to_responder.send(a.message3(ch.to_initiator.recv()));
  b.finish(ch.to_responder.recv());
  return HandshakeOutcome{a.shared(), b.shared(), a.transcript(), b.transcript()};
}

}  // namespace pvc
