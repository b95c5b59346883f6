#pragma once

#include <condition_variable>
#include <deque>
#include <mutex>

#include "pvc/field.hpp"
#include "pvc/hmac.hpp"
#include "pvc/rng.hpp"

namespace pvc {

struct PrimitiveVector {
  std::array<Fe, 3> g{};

  // Throws Error(config) unless all three are pairwise distinct primitive
  // roots mod p.
  static PrimitiveVector validated(const std::array<u64, 3>& g, const FieldCtx& ctx);
};

struct EphemeralKeypair {
  u64 secret = 0;                    // in {1, ..., p-2}
  std::array<Fe, 3> public_vec{};    // component-wise g_i^secret

  static EphemeralKeypair from_secret(const PrimitiveVector& g, u64 secret, const FieldCtx& ctx);
  // Resamples the one secret (p-1)/2 whose public vector contains p-1 and
  // would be rejected by every honest peer.
  static EphemeralKeypair generate(const PrimitiveVector& g, const FieldCtx& ctx,
                                   RandomSource& rng);
};

// k_j = peer_public[j] ^ own.secret. Peer components outside [2, p-2] throw
// Error(invalid_peer_public); 0, 1 and p-1 would confine the shared vector to
// a tiny subgroup.
SharedVector derive_shared(const EphemeralKeypair& own, const std::array<Fe, 3>& peer_public,
                           const FieldCtx& ctx);

class Signer {
 public:
  virtual ~Signer() = default;
  virtual Bytes sign(ByteView message) = 0;
  virtual bool verify(ByteView message, ByteView signature) const = 0;
  virtual const Bytes& identity() const = 0;
};

// Test signer over a pre-shared 32-octet key. Deterministic: sig = HMAC(psk,
// len4(identity) || identity || message). Stands in for an asymmetric scheme;
// anything implementing Signer drops in.
class HmacSigner final : public Signer {
 public:
  HmacSigner(const Digest& psk, Bytes identity)
      : psk_(psk), identity_(std::move(identity)) {}

  Bytes sign(ByteView message) override;
  bool verify(ByteView message, ByteView signature) const override;
  const Bytes& identity() const override { return identity_; }

 private:
  Digest psk_;
  Bytes identity_;
};

struct StsTranscript {
  std::array<Fe, 3> initiator_public{};
  std::array<Fe, 3> responder_public{};
  Bytes sig_initiator;
  Bytes sig_responder;
  Digest mac_responder{};
  Digest mac_initiator{};
};

// Three-message station-to-station flow over the primitive vector group:
//   MSG1  A -> B:  g^a, sig_A
//   MSG2  B -> A:  g^b, sig_B, mac_B
//   MSG3  A -> B:  mac_A
// Both MAC tags are HMAC(k_mac, canonical encoding of publics+signatures)
// with k_mac derived from the shared vector (zero salt; sessions use fresh
// header salts later). Any parse, range, signature or MAC failure throws and
// no key material is released.
class StsInitiator {
 public:
  StsInitiator(const FieldCtx& ctx, Signer& own_signer, const Signer& peer_verifier,
               const EphemeralKeypair& keypair);

  Bytes message1();
  Bytes message3(ByteView message2);

  bool completed() const { return completed_; }
  const SharedVector& shared() const;
  const StsTranscript& transcript() const;

 private:
  const FieldCtx& ctx_;
  Signer& own_;
  const Signer& peer_;
  EphemeralKeypair kp_;
  StsTranscript ts_;
  SharedVector shared_{};
  bool sent1_ = false;
  bool completed_ = false;
};

class StsResponder {
 public:
  StsResponder(const FieldCtx& ctx, Signer& own_signer, const Signer& peer_verifier,
               const EphemeralKeypair& keypair);

  Bytes message2(ByteView message1);
  void finish(ByteView message3);

  bool completed() const { return completed_; }
  const SharedVector& shared() const;
  const StsTranscript& transcript() const;

 private:
  const FieldCtx& ctx_;
  Signer& own_;
  const Signer& peer_;
  EphemeralKeypair kp_;
  StsTranscript ts_;
  SharedVector shared_{};
  Digest expected_mac_{};
  bool sent2_ = false;
  bool completed_ = false;
};

// The canonical MAC input: i2osp of the 6 public components at octet_len
// (initiator's vector first), then each signature with a 4-octet big-endian
// length prefix.
Bytes sts_mac_input(const std::array<Fe, 3>& initiator_public,
                    const std::array<Fe, 3>& responder_public, ByteView sig_initiator,
                    ByteView sig_responder, const FieldCtx& ctx);

// Thread-safe FIFO of byte messages; blocks on recv until a message arrives.
class MessageQueue {
 public:
  void send(Bytes msg);
  Bytes recv();

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  std::deque<Bytes> q_;
};

// Reliable ordered duplex pipe between the two parties.
struct DuplexChannel {
  MessageQueue to_responder;
  MessageQueue to_initiator;
};

struct HandshakeOutcome {
  SharedVector initiator_shared;
  SharedVector responder_shared;
  StsTranscript initiator_transcript;
  StsTranscript responder_transcript;
};

// Drives both state machines over the channel (single thread; the state
// machines themselves are single-owner and may instead run on two threads).
HandshakeOutcome sts_handshake(StsInitiator& a, StsResponder& b, DuplexChannel& ch);

}  // namespace pvc
