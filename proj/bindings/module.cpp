// Python module over the core library. Field elements cross the boundary as
// Python ints, matrices as nested lists, byte payloads as bytes.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

#include "pvc/analysis.hpp"
#include "pvc/errors.hpp"

namespace py = pybind11;
using namespace pvc;

namespace {

Bytes to_bytes(const py::bytes& b) {
  std::string s = b;
  return Bytes(s.begin(), s.end());
}

py::bytes from_bytes(ByteView b) {
  return py::bytes(reinterpret_cast<const char*>(b.data()), b.size());
}

std::array<Fe, 3> to_vec3(const std::vector<u64>& v, const char* name) {
  if (v.size() != 3) throw Error(Errc::config, std::string(name) + " needs exactly 3 components");
  return {v[0], v[1], v[2]};
}

std::vector<std::vector<Fe>> block_rows(const Block& b) {
  std::vector<std::vector<Fe>> rows(3, std::vector<Fe>(3));
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) rows[r][c] = b.at(r, c);
  return rows;
}

SessionParams make_session(u64 rows, u64 cols, u64 start_row, u64 start_col,
                           std::optional<u64> seed) {
  if (rows > 0xffff || cols > 0xffff || start_row > 0xffff || start_col > 0xffff)
    throw Error(Errc::config, "shape and start must fit 16 bits");
  std::unique_ptr<RandomSource> rng;
  if (seed)
    rng = std::make_unique<SeededRandom>(*seed);
  else
    rng = std::make_unique<SystemRandom>();
  return random_session(static_cast<std::uint16_t>(rows), static_cast<std::uint16_t>(cols),
                        static_cast<std::uint16_t>(start_row),
                        static_cast<std::uint16_t>(start_col), *rng);
}

}  // namespace

PYBIND11_MODULE(pvc, m) {
  m.doc() = "primitive-vector cipher: key agreement, block encryption, analysis";

  py::register_exception<Error>(m, "PvcError");

  m.def("is_prime", [](u64 n) { return is_prime_u64(n); }, py::arg("n"));

  m.def(
      "validate_params",
      [](u64 p, const std::vector<u64>& g) {
        FieldCtx ctx(p);
        PrimitiveVector::validated(to_vec3(g, "g"), ctx);
        return true;
      },
      py::arg("p"), py::arg("g"),
      "Check that p is a usable prime and g holds three distinct primitive roots. "
      "Raises PvcError otherwise.");

  m.def(
      "prime_factors",
      [](u64 p) {
        FieldCtx ctx(p);
        return ctx.p_minus_1_factors();
      },
      py::arg("p"), "Distinct prime factors of p-1.");

  m.def(
      "public_vector",
      [](u64 p, const std::vector<u64>& g, u64 secret) {
        FieldCtx ctx(p);
        PrimitiveVector pg = PrimitiveVector::validated(to_vec3(g, "g"), ctx);
        EphemeralKeypair kp = EphemeralKeypair::from_secret(pg, secret, ctx);
        return std::vector<Fe>(kp.public_vec.begin(), kp.public_vec.end());
      },
      py::arg("p"), py::arg("g"), py::arg("secret"), "Component-wise g_i^secret mod p.");

  m.def(
      "shared_vector",
      [](u64 p, const std::vector<u64>& g, u64 own_secret, const std::vector<u64>& peer_public) {
        FieldCtx ctx(p);
        PrimitiveVector pg = PrimitiveVector::validated(to_vec3(g, "g"), ctx);
        EphemeralKeypair kp = EphemeralKeypair::from_secret(pg, own_secret, ctx);
        SharedVector sh = derive_shared(kp, to_vec3(peer_public, "peer_public"), ctx);
        return std::vector<Fe>(sh.k.begin(), sh.k.end());
      },
      py::arg("p"), py::arg("g"), py::arg("own_secret"), py::arg("peer_public"),
      "Diffie-Hellman shared vector (k1, k2, k3).");

  m.def(
      "key_matrices",
      [](u64 p, const std::vector<u64>& shared) {
        FieldCtx ctx(p);
        SharedVector sh;
        std::copy_n(to_vec3(shared, "shared").begin(), 3, sh.k.begin());
        KeyMatrices km = build_key_matrices(sh, ctx);
        return py::make_tuple(block_rows(km.v), block_rows(km.u), block_rows(km.v_inv),
                              det(km.v, ctx));
      },
      py::arg("p"), py::arg("shared"),
      "Return (V, U, V_inverse, det(V)) as nested lists plus the determinant.");

  m.def(
      "plan_indices",
      [](std::size_t m_, std::size_t n) {
        SsmIndexPlan plan = plan_indices(m_, n);
        return py::make_tuple(plan.row_tops, plan.col_tops);
      },
      py::arg("rows"), py::arg("cols"),
      "Stride-3 block tops (I, J) for an MxN master matrix.");

  m.def(
      "encrypt",
      [](const py::bytes& message, u64 p, const std::vector<u64>& g, u64 sender_secret,
         const std::vector<u64>& receiver_public, u64 rows, u64 cols, u64 start_row,
         u64 start_col, bool offsets, std::optional<u64> seed) {
        FieldCtx ctx(p);
        PrimitiveVector pg = PrimitiveVector::validated(to_vec3(g, "g"), ctx);
        EphemeralKeypair kp = EphemeralKeypair::from_secret(pg, sender_secret, ctx);
        SharedVector sh = derive_shared(kp, to_vec3(receiver_public, "receiver_public"), ctx);
        SessionParams sp = make_session(rows, cols, start_row, start_col, seed);
        EncryptOptions opts;
        opts.apply_offsets = offsets;
        Ciphertext ct = encrypt(to_bytes(message), pg, kp.public_vec, sh, sp, ctx, opts);
        return from_bytes(serialize(ct));
      },
      py::arg("message"), py::arg("p"), py::arg("g"), py::arg("sender_secret"),
      py::arg("receiver_public"), py::arg("rows") = 8, py::arg("cols") = 10,
      py::arg("start_row") = 1, py::arg("start_col") = 1, py::arg("offsets") = true,
      py::arg("seed") = std::nullopt,
      "Encrypt bytes into the serialized wire format. seed pins the salt/nonce draw.");

  m.def(
      "decrypt",
      [](const py::bytes& wire, u64 receiver_secret, bool offsets) {
        DecryptOptions opts;
        opts.apply_offsets = offsets;
        return from_bytes(decrypt(deserialize(to_bytes(wire)), receiver_secret, opts));
      },
      py::arg("wire"), py::arg("receiver_secret"), py::arg("offsets") = true,
      "Decrypt a serialized ciphertext. Raises PvcError on tampering or parse failure.");

  m.def(
      "count_ops",
      [](std::size_t m_, std::size_t n) {
        OpCounters c = count_ops(m_, n);
        return py::make_tuple(c.field_mults, c.field_adds, c.hmac_calls);
      },
      py::arg("rows"), py::arg("cols"),
      "(field multiplications, field additions, HMAC invocations) for one encryption.");

  m.def(
      "entropy",
      [](const std::vector<u64>& values) {
        EntropyReport r = entropy(std::span<const Fe>(values));
        return py::make_tuple(r.h_bits, r.h_max, r.distinct_count);
      },
      py::arg("values"), "(shannon_bits, max_bits, distinct_count) of a sample.");

  m.def(
      "randomness_suite",
      [](const py::bytes& stream) {
        Bytes b = to_bytes(stream);
        RandomnessReport r = randomness_suite(b, b.size() * 8);
        py::dict d;
        d["bits"] = r.bit_count;
        d["monobit"] = r.p_monobit;
        d["runs"] = r.p_runs;
        d["poker4"] = r.p_poker4;
        return d;
      },
      py::arg("stream"),
      "Monobit, runs and 4-bit poker p-values over a byte stream (>= 2000 bits).");

  m.def(
      "avalanche",
      [](std::size_t trials, std::size_t m_, std::size_t n, u64 p, u64 seed) {
        FieldCtx ctx(p);
        SeededRandom rng(seed);
        AvalancheReport r = avalanche(trials, m_, n, ctx, rng);
        py::dict d;
        d["trials"] = r.trials;
        d["row_diffusion"] = r.mean_row_diffusion;
        d["element_diffusion"] = r.mean_element_diffusion;
        d["structural_violations"] = r.structural_violations;
        return d;
      },
      py::arg("trials"), py::arg("rows"), py::arg("cols"), py::arg("p") = 12347,
      py::arg("seed") = 1, "Single-bit plaintext flip diffusion statistics.");

  m.def(
      "kpa_probe",
      [](std::size_t pairs, bool offsets, std::size_t trials, u64 p, u64 seed) {
        FieldCtx ctx(p);
        SeededRandom rng(seed);
        KpaReport r = kpa_probe(pairs, offsets, trials, ctx, rng);
        py::dict d;
        d["trials"] = r.trials;
        d["recovered"] = r.recovered;
        d["singular_retries"] = r.singular_retries;
        d["residual_samples"] = r.residual_samples;
        d["residual_entropy"] = r.residual_entropy;
        d["residual_entropy_max"] = r.residual_entropy_max;
        return d;
      },
      py::arg("pairs") = 3, py::arg("offsets") = true, py::arg("trials") = 100,
      py::arg("p") = 2305843009213693951ull, py::arg("seed") = 1,
      "Known-plaintext linear solve against the block layer.");

  m.def(
      "sts_demo",
      [](u64 p, const std::vector<u64>& g, u64 seed) {
        FieldCtx ctx(p);
        PrimitiveVector pg = PrimitiveVector::validated(to_vec3(g, "g"), ctx);
        SeededRandom rng(seed);
        Digest psk_a, psk_b;
        rng.fill(psk_a);
        rng.fill(psk_b);
        HmacSigner sa(psk_a, Bytes{'a'});
        HmacSigner sb(psk_b, Bytes{'b'});
        EphemeralKeypair ka = EphemeralKeypair::generate(pg, ctx, rng);
        EphemeralKeypair kb = EphemeralKeypair::generate(pg, ctx, rng);
        StsInitiator alice(ctx, sa, sb, ka);
        StsResponder bob(ctx, sb, sa, kb);
        DuplexChannel ch;
        HandshakeOutcome out = sts_handshake(alice, bob, ch);
        py::dict d;
        d["initiator_shared"] = std::vector<Fe>(out.initiator_shared.k.begin(),
                                                out.initiator_shared.k.end());
        d["responder_shared"] = std::vector<Fe>(out.responder_shared.k.begin(),
                                                out.responder_shared.k.end());
        d["initiator_public"] = std::vector<Fe>(out.initiator_transcript.initiator_public.begin(),
                                                out.initiator_transcript.initiator_public.end());
        d["responder_public"] = std::vector<Fe>(out.initiator_transcript.responder_public.begin(),
                                                out.initiator_transcript.responder_public.end());
        return d;
      },
      py::arg("p") = 12347, py::arg("g") = std::vector<u64>{2, 5, 6}, py::arg("seed") = 1,
      "Run a full authenticated exchange in-process and return both shared vectors.");
}
