// pvc: primitive-vector cipher tool.
//
// Commands: params, demo, exchange, encrypt, decrypt, analyze.
// Exit codes: 0 ok, 2 invalid configuration, 3 malformed input, 4 integrity
// failure, 5 I/O error. Diagnostics go to stderr, reports to stdout.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "pvc/analysis.hpp"
#include "pvc/errors.hpp"
#include "pvc/kat.hpp"

using namespace pvc;

namespace {

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case Errc::parse:
      return 3;
    case Errc::overlap_mismatch:
    case Errc::mac_invalid:
    case Errc::signature_invalid:
    case Errc::bad_length:
      return 4;
    case Errc::io:
      return 5;
    default:
      return 2;
  }
}

Bytes read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot open " + path + " for reading");
  Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(Errc::io, "read error on " + path);
  return data;
}

void write_file(const std::string& path, ByteView data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::io, "cannot open " + path + " for writing");
  out.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size()));
  if (!out) throw Error(Errc::io, "write error on " + path);
}

struct ShapeOpt {
  std::uint16_t rows = 8;
  std::uint16_t cols = 10;
};

ShapeOpt parse_shape(const std::string& s) {
  std::size_t x = s.find_first_of("xX");
  if (x == std::string::npos || x == 0 || x + 1 == s.size())
    throw Error(Errc::config, "--shape expects MxN, got '" + s + "'");
  unsigned long m = 0, n = 0;
  try {
    m = std::stoul(s.substr(0, x));
    n = std::stoul(s.substr(x + 1));
  } catch (const std::exception&) {
    throw Error(Errc::config, "--shape expects MxN, got '" + s + "'");
  }
  if (m < 3 || n < 3 || m > 0xffff || n > 0xffff)
    throw Error(Errc::config, "--shape out of range (3..65535 per side)");
  return {static_cast<std::uint16_t>(m), static_cast<std::uint16_t>(n)};
}

std::pair<std::uint16_t, std::uint16_t> parse_start(const std::string& s) {
  std::size_t c = s.find(',');
  if (c == std::string::npos || c == 0 || c + 1 == s.size())
    throw Error(Errc::config, "--start expects ROW,COL, got '" + s + "'");
  unsigned long r = 0, k = 0;
  try {
    r = std::stoul(s.substr(0, c));
    k = std::stoul(s.substr(c + 1));
  } catch (const std::exception&) {
    throw Error(Errc::config, "--start expects ROW,COL, got '" + s + "'");
  }
  if (r < 1 || k < 1 || r > 0xffff || k > 0xffff)
    throw Error(Errc::config, "--start positions are 1-based 16-bit values");
  return {static_cast<std::uint16_t>(r), static_cast<std::uint16_t>(k)};
}

bool parse_on_off(const std::string& s, const char* flag) {
  if (s == "on") return true;
  if (s == "off") return false;
  throw Error(Errc::config, std::string(flag) + " expects 'on' or 'off', got '" + s + "'");
}

std::unique_ptr<RandomSource> make_rng(const std::optional<u64>& seed_flag) {
  std::optional<u64> seed = seed_flag;
  if (!seed) {
    if (const char* env = std::getenv("PVC_SEED")) {
      try {
        seed = std::stoull(env);
      } catch (const std::exception&) {
        throw Error(Errc::config, "PVC_SEED is not a valid unsigned integer");
      }
    }
  }
  if (seed) return std::make_unique<SeededRandom>(*seed);
  return std::make_unique<SystemRandom>();
}

std::string vec3(const std::array<Fe, 3>& a) {
  return "(" + std::to_string(a[0]) + ", " + std::to_string(a[1]) + ", " +
         std::to_string(a[2]) + ")";
}

void print_block(const char* name, const Block& b) {
  std::printf("%s =\n", name);
  for (std::size_t r = 0; r < 3; ++r)
    std::printf("  [ %6llu %6llu %6llu ]\n", static_cast<unsigned long long>(b.at(r, 0)),
                static_cast<unsigned long long>(b.at(r, 1)),
                static_cast<unsigned long long>(b.at(r, 2)));
}

std::string tops(const std::vector<std::size_t>& t) {
  std::string s = "{";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? ", " : "") + std::to_string(t[i]);
  return s + "}";
}

// Shared flag bundle for commands that build a cipher session.
struct CommonOpts {
  u64 prime = 12347;
  std::vector<u64> gvec{2, 5, 6};
  std::string shape = "8x10";
  std::string start = "1,1";
  std::string offsets = "on";
  std::optional<u64> seed;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_shape) {
  cmd->add_option("--prime", o.prime, "field prime p (3 <= p < 2^62)");
  cmd->add_option("--gvec", o.gvec, "primitive vector g1,g2,g3")->delimiter(',')->expected(3);
  if (with_shape) {
    cmd->add_option("--shape", o.shape, "master matrix shape MxN");
    cmd->add_option("--start", o.start, "1-based embedding start ROW,COL");
    cmd->add_option("--offsets", o.offsets, "per-column keystream: on|off");
  }
  cmd->add_option("--seed", o.seed, "deterministic RNG seed (fallback: env PVC_SEED)");
}

int cmd_params(u64 p, const std::vector<u64>& g) {
  if (!is_prime_u64(p)) {
    std::fprintf(stderr, "p = %llu is not prime\n", static_cast<unsigned long long>(p));
    return 2;
  }
  FieldCtx ctx(p);

  std::string fact;
  u64 rest = p - 1;
  for (u64 q : ctx.p_minus_1_factors()) {
    unsigned e = 0;
    while (rest % q == 0) {
      rest /= q;
      ++e;
    }
    if (!fact.empty()) fact += " * ";
    fact += std::to_string(q);
    if (e > 1) fact += "^" + std::to_string(e);
  }
  std::printf("p = %llu (prime), p-1 = %s\n", static_cast<unsigned long long>(p), fact.c_str());

  bool all_ok = true;
  for (std::size_t i = 0; i < g.size(); ++i) {
    bool ok = ctx.is_primitive_root(g[i]);
    for (std::size_t j = 0; j < i; ++j) ok = ok && g[j] != g[i];
    std::printf("g%zu = %llu: %s\n", i + 1, static_cast<unsigned long long>(g[i]),
                ok ? "distinct primitive root" : "REJECTED");
    all_ok = all_ok && ok;
  }
  if (!all_ok) {
    std::fprintf(stderr, "parameter set rejected\n");
    return 2;
  }
  std::printf("parameter set valid\n");
  return 0;
}

int cmd_demo() {
  FieldCtx ctx(kat::kDemoPrime);
  PrimitiveVector g = PrimitiveVector::validated(kat::kDemoGenerators, ctx);
  EphemeralKeypair ka = EphemeralKeypair::from_secret(g, kat::kDemoSecretA, ctx);
  EphemeralKeypair kb = EphemeralKeypair::from_secret(g, kat::kDemoSecretB, ctx);
  SharedVector shared = derive_shared(ka, kb.public_vec, ctx);

  std::printf("p = %llu, g = %s\n", static_cast<unsigned long long>(ctx.p()),
              vec3(g.g).c_str());
  std::printf("secrets: a = %llu, b = %llu\n",
              static_cast<unsigned long long>(kat::kDemoSecretA),
              static_cast<unsigned long long>(kat::kDemoSecretB));
  std::printf("g^a = %s\ng^b = %s\n", vec3(ka.public_vec).c_str(), vec3(kb.public_vec).c_str());
  std::printf("shared G = %s\n", vec3(shared.k).c_str());

  KeyMatrices km = build_key_matrices(shared, ctx);
  print_block("V", km.v);
  print_block("U", km.u);
  std::printf("det(V) = %llu\n", static_cast<unsigned long long>(det(km.v, ctx)));

  SsmIndexPlan plan = plan_indices(kat::kDemoRows, kat::kDemoCols);
  std::printf("plan %zux%zu: I = %s, J = %s, %zu blocks, %zu ciphertext columns\n",
              kat::kDemoRows, kat::kDemoCols, tops(plan.row_tops).c_str(),
              tops(plan.col_tops).c_str(), plan.block_count(), 3 * plan.block_count());

  auto fixtures = kat::demo_block_vectors();
  std::size_t verified = 0;
  for (const auto& v : fixtures) {
    Block s;
    std::copy(v.s.begin(), v.s.end(), s.e.begin());
    Block c = encrypt_block(s, v.i, v.j, km, ctx);
    bool ok = std::equal(v.c.begin(), v.c.end(), c.e.begin());
    if (ok) ++verified;
  }
  std::printf("static fixtures: %zu/%zu blocks satisfy C = S*V + Delta*U\n", verified,
              fixtures.size());

  SessionParams sp;
  sp.salt.fill(0x5a);
  sp.nonce.fill(0xc3);
  sp.rows = kat::kDemoRows;
  sp.cols = kat::kDemoCols;
  sp.start_row = kat::kDemoStartRow;
  sp.start_col = kat::kDemoStartCol;
  Bytes msg(kat::kDemoMessage.begin(), kat::kDemoMessage.end());
  std::printf("message: \"%.*s\" (%zu octets at (%zu,%zu))\n",
              static_cast<int>(kat::kDemoMessage.size()), kat::kDemoMessage.data(), msg.size(),
              kat::kDemoStartRow, kat::kDemoStartCol);
  std::printf("salt = 5a x32, nonce = c3 x16 (fixed for the walkthrough)\n");

  Ciphertext ct = encrypt(msg, g, ka.public_vec, shared, sp, ctx);
  Bytes wire = serialize(ct);
  std::printf("ciphertext: %zu columns, %zu wire octets\n", ct.columns.size(), wire.size());
  for (std::size_t ell : {std::size_t(0), std::size_t(1), ct.columns.size() - 1})
    std::printf("  c~_%zu = %s\n", ell + 1, vec3(ct.columns[ell]).c_str());

  Bytes back = decrypt(deserialize(wire), kat::kDemoSecretB);
  bool ok = back == msg;
  std::printf("round trip: %s\n", ok ? "success" : "FAILURE");
  if (!ok) return 1;
  std::printf("decrypted: \"%.*s\"\n", static_cast<int>(back.size()),
              reinterpret_cast<const char*>(back.data()));
  return 0;
}

int cmd_exchange(const CommonOpts& o) {
  FieldCtx ctx(o.prime);
  PrimitiveVector g = PrimitiveVector::validated({o.gvec[0], o.gvec[1], o.gvec[2]}, ctx);
  auto rng = make_rng(o.seed);

  Digest psk_a, psk_b;
  rng->fill(psk_a);
  rng->fill(psk_b);
  HmacSigner sa(psk_a, Bytes{'a', 'l', 'i', 'c', 'e'});
  HmacSigner sb(psk_b, Bytes{'b', 'o', 'b'});

  EphemeralKeypair ka = EphemeralKeypair::generate(g, ctx, *rng);
  EphemeralKeypair kb = EphemeralKeypair::generate(g, ctx, *rng);
  StsInitiator alice(ctx, sa, sb, ka);
  StsResponder bob(ctx, sb, sa, kb);
  DuplexChannel ch;
  HandshakeOutcome out = sts_handshake(alice, bob, ch);

  std::printf("p = %llu, g = %s\n", static_cast<unsigned long long>(ctx.p()),
              vec3(g.g).c_str());
  std::printf("initiator public g^a = %s\n", vec3(out.initiator_transcript.initiator_public).c_str());
  std::printf("responder public g^b = %s\n", vec3(out.initiator_transcript.responder_public).c_str());
  std::printf("sig_A = %s\n", to_hex(out.initiator_transcript.sig_initiator).c_str());
  std::printf("sig_B = %s\n", to_hex(out.initiator_transcript.sig_responder).c_str());
  std::printf("mac_B = %s\n", to_hex(out.initiator_transcript.mac_responder).c_str());
  std::printf("mac_A = %s\n", to_hex(out.initiator_transcript.mac_initiator).c_str());
  std::printf("initiator shared G = %s\n", vec3(out.initiator_shared.k).c_str());
  std::printf("responder shared G = %s\n", vec3(out.responder_shared.k).c_str());
  bool agree = out.initiator_shared.k == out.responder_shared.k;
  std::printf("agreement: %s\n", agree ? "yes" : "NO");
  return agree ? 0 : 1;
}

int cmd_encrypt(const CommonOpts& o, const std::string& in_path, std::string out_path,
                std::optional<u64> secret_a, std::optional<u64> secret_b,
                std::vector<u64> peer_public) {
  FieldCtx ctx(o.prime);
  PrimitiveVector g = PrimitiveVector::validated({o.gvec[0], o.gvec[1], o.gvec[2]}, ctx);
  auto rng = make_rng(o.seed);

  EphemeralKeypair ka = secret_a ? EphemeralKeypair::from_secret(g, *secret_a, ctx)
                                 : EphemeralKeypair::generate(g, ctx, *rng);
  std::array<Fe, 3> peer{};
  if (!peer_public.empty() && secret_b)
    throw Error(Errc::config, "give either --peer-public or --secret-b, not both");
  if (!peer_public.empty()) {
    std::copy(peer_public.begin(), peer_public.end(), peer.begin());
  } else if (secret_b) {
    peer = EphemeralKeypair::from_secret(g, *secret_b, ctx).public_vec;
  } else {
    throw Error(Errc::config, "encrypt needs --peer-public K1,K2,K3 or --secret-b N");
  }
  SharedVector shared = derive_shared(ka, peer, ctx);

  ShapeOpt shape = parse_shape(o.shape);
  auto [sr, sc] = parse_start(o.start);
  SessionParams sp = random_session(shape.rows, shape.cols, sr, sc, *rng);

  Bytes msg = read_file(in_path);
  EncryptOptions eo;
  eo.apply_offsets = parse_on_off(o.offsets, "--offsets");

  Ciphertext ct = encrypt(msg, g, ka.public_vec, shared, sp, ctx, eo);
  if (out_path.empty()) out_path = in_path + ".pvc";
  write_file(out_path, serialize(ct));
  std::fprintf(stderr, "ephemeral secret a = %llu (keep for your records)\n",
               static_cast<unsigned long long>(ka.secret));
  std::printf("%s: %zu octets -> %s (%zux%zu matrix, %zu columns)\n", in_path.c_str(),
              msg.size(), out_path.c_str(), std::size_t(shape.rows), std::size_t(shape.cols),
              ct.columns.size());
  return 0;
}

int cmd_decrypt(const std::string& in_path, std::string out_path, u64 secret,
                const std::string& offsets) {
  Bytes wire = read_file(in_path);
  DecryptOptions dopt;
  dopt.apply_offsets = parse_on_off(offsets, "--offsets");
  Ciphertext ct = deserialize(wire);
  Bytes msg = decrypt(ct, secret, dopt);
  if (out_path.empty()) {
    out_path = in_path;
    if (out_path.size() > 4 && out_path.substr(out_path.size() - 4) == ".pvc")
      out_path.resize(out_path.size() - 4);
    else
      out_path += ".out";
  }
  write_file(out_path, msg);
  std::printf("%s: %zu octets -> %s\n", in_path.c_str(), msg.size(), out_path.c_str());
  return 0;
}

int analyze_ops(const std::string& shape_str) {
  ShapeOpt s = parse_shape(shape_str);
  OpCounters c = count_ops(s.rows, s.cols);
  SsmIndexPlan plan = plan_indices(s.rows, s.cols);
  std::printf("shape %ux%u: %zu blocks\n", s.rows, s.cols, plan.block_count());
  std::printf("field multiplications: %llu\n", static_cast<unsigned long long>(c.field_mults));
  std::printf("field additions:       %llu\n", static_cast<unsigned long long>(c.field_adds));
  std::printf("hmac invocations:      %llu\n", static_cast<unsigned long long>(c.hmac_calls));
  return 0;
}

int analyze_entropy(const CommonOpts& o, std::size_t sessions) {
  FieldCtx ctx(o.prime);
  ShapeOpt s = parse_shape(o.shape);
  auto rng = make_rng(o.seed);
  PrimitiveVector g{{2, 3, 5}};  // header-only fields; not used by the statistic

  double target = std::log2(9.0 * plan_indices(s.rows, s.cols).block_count());
  bool all_ok = true;
  std::printf("shape %ux%u, %zu sessions, threshold log2(9B) - 0.15 = %.4f\n", s.rows, s.cols,
              sessions, target - 0.15);
  for (std::size_t t = 0; t < sessions; ++t) {
    SharedVector sh;
    for (auto& k : sh.k) k = rng->uniform(1, ctx.p() - 1);
    SessionParams sp = random_session(s.rows, s.cols, 1, 1, *rng);
    Bytes msg(std::size_t(s.rows) * s.cols);
    rng->fill(msg);
    Ciphertext ct = encrypt(msg, g, {2, 3, 5}, sh, sp, ctx);
    std::vector<Fe> elems;
    for (const auto& col : ct.columns)
      for (Fe x : col) elems.push_back(x);
    EntropyReport er = entropy(elems);
    bool ok = er.h_bits >= target - 0.15;
    all_ok = all_ok && ok;
    std::printf("session %2zu: n = %zu, distinct = %zu, H = %.6f, H_max = %.6f  [%s]\n", t + 1,
                er.n_values, er.distinct_count, er.h_bits, er.h_max, ok ? "ok" : "LOW");
  }
  std::printf("entropy threshold: %s\n", all_ok ? "pass" : "FAIL");
  return all_ok ? 0 : 1;
}

int analyze_avalanche(const CommonOpts& o, std::size_t trials) {
  FieldCtx ctx(o.prime);
  ShapeOpt s = parse_shape(o.shape);
  auto rng = make_rng(o.seed);
  AvalancheReport r = avalanche(trials, s.rows, s.cols, ctx, *rng);
  double pct = 100.0 * r.mean_row_diffusion;
  std::printf("trials: %zu at %ux%u\n", r.trials, s.rows, s.cols);
  std::printf("mean row diffusion:     %.3f%%\n", pct);
  std::printf("mean element diffusion: %.3f%%\n", 100.0 * r.mean_element_diffusion);
  std::printf("structural violations:  %zu\n", r.structural_violations);
  bool ok = r.structural_violations == 0 && pct >= 32.0 && pct <= 34.7;
  std::printf("row diffusion in [32.0%%, 34.7%%] with whole-row structure: %s\n",
              ok ? "pass" : "FAIL");
  return ok ? 0 : 1;
}

int analyze_randomness(const CommonOpts& o, std::size_t sessions) {
  FieldCtx ctx(o.prime);
  ShapeOpt s = parse_shape(o.shape);
  auto rng = make_rng(o.seed);
  std::size_t columns = 3 * plan_indices(s.rows, s.cols).block_count();

  std::size_t passed = 0, dup_sessions = 0;
  for (std::size_t t = 0; t < sessions; ++t) {
    SharedVector sh;
    for (auto& k : sh.k) k = rng->uniform(1, ctx.p() - 1);
    Bytes salt(32);
    rng->fill(salt);
    DerivedKeys keys = derive_keys(sh, salt, ctx);
    std::array<std::uint8_t, 16> nonce{};
    rng->fill(nonce);

    std::vector<std::array<Fe, 3>> offsets;
    for (u64 ell = 1; ell <= columns; ++ell)
      offsets.push_back(column_offset(keys, nonce, ell, ctx));
    if (!duplicate_scan(offsets).empty()) ++dup_sessions;

    Bytes ks = offset_keystream(keys, nonce, columns);
    RandomnessReport r = randomness_suite(ks, ks.size() * 8);
    bool ok = r.pass(0.01);
    if (ok) ++passed;
    std::printf("session %2zu: monobit %.4f, runs %.4f, poker %.4f  [%s]\n", t + 1, r.p_monobit,
                r.p_runs, r.p_poker4, ok ? "ok" : "reject");
  }
  std::printf("%zu/%zu sessions passed the battery at alpha 0.01; %zu with repeated offsets\n",
              passed, sessions, dup_sessions);
  bool ok = dup_sessions == 0 && passed * 50 >= sessions * 48;
  std::printf("keystream hygiene: %s\n", ok ? "pass" : "FAIL");
  return ok ? 0 : 1;
}

int analyze_kpa(const CommonOpts& o, bool kpa_prime_set, std::size_t trials) {
  // Residual uniformity is only measurable against a roomy field; default to
  // a 61-bit prime unless the caller pinned one.
  u64 p = kpa_prime_set ? o.prime : 2305843009213693951ull;
  FieldCtx ctx(p);
  auto rng = make_rng(o.seed);
  bool offsets_on = parse_on_off(o.offsets, "--offsets");

  KpaReport r = kpa_probe(3, offsets_on, trials, ctx, *rng);
  std::printf("p = %llu, %zu trials, 3 known pairs each, offsets %s\n",
              static_cast<unsigned long long>(p), r.trials, offsets_on ? "on" : "off");
  std::printf("V recovered exactly: %zu/%zu\n", r.recovered, r.trials);
  std::printf("singular-stack resamples: %zu\n", r.singular_retries);
  if (offsets_on) {
    std::printf("held-out residuals: %zu, entropy %.4f of max %.4f (gap %.4f bits)\n",
                r.residual_samples, r.residual_entropy, r.residual_entropy_max,
                r.residual_entropy_max - r.residual_entropy);
    bool ok = r.recovered == 0 && r.residual_entropy_max - r.residual_entropy < 0.1;
    std::printf("offset layer blocks the linear solve: %s\n", ok ? "pass" : "FAIL");
    return ok ? 0 : 1;
  }
  bool ok = r.recovered * 100 >= r.trials * 95;
  std::printf("bare block layer falls to the linear solve (>= 95%%): %s\n",
              ok ? "pass" : "FAIL");
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"primitive-vector cipher tool"};
  app.require_subcommand(1);

  // params
  auto* params = app.add_subcommand("params", "validate a (p, g1, g2, g3) parameter set");
  u64 params_p = 0;
  std::vector<u64> params_g;
  params->add_option("p", params_p, "field prime")->required();
  params->add_option("g", params_g, "candidate generators")->expected(3)->required();

  // demo
  app.add_subcommand("demo", "run the fixed worked example end to end");

  // exchange
  auto* exchange = app.add_subcommand("exchange", "scripted two-party authenticated exchange");
  CommonOpts xo;
  add_common(exchange, xo, false);

  // encrypt
  auto* enc = app.add_subcommand("encrypt", "encrypt a file into the .pvc wire format");
  CommonOpts eo;
  std::string enc_in, enc_out;
  std::optional<u64> enc_secret_a, enc_secret_b;
  std::vector<u64> enc_peer;
  enc->add_option("--in", enc_in, "plaintext file")->required();
  enc->add_option("--out", enc_out, "output path (default: <in>.pvc)");
  add_common(enc, eo, true);
  enc->add_option("--secret-a", enc_secret_a, "sender ephemeral secret (default: random)");
  enc->add_option("--secret-b", enc_secret_b, "receiver secret, for self-contained tests");
  enc->add_option("--peer-public", enc_peer, "receiver public vector K1,K2,K3")
      ->delimiter(',')
      ->expected(3);

  // decrypt
  auto* dec = app.add_subcommand("decrypt", "decrypt a .pvc file");
  std::string dec_in, dec_out, dec_offsets = "on";
  u64 dec_secret = 0;
  dec->add_option("--in", dec_in, "ciphertext file")->required();
  dec->add_option("--out", dec_out, "output path (default: strip .pvc)");
  dec->add_option("--secret", dec_secret, "receiver secret")->required();
  dec->add_option("--offsets", dec_offsets, "per-column keystream: on|off");

  // analyze
  auto* ana = app.add_subcommand("analyze", "statistical and structural reports");
  std::string kind;
  ana->add_option("kind", kind, "entropy|avalanche|randomness|ops|kpa")
      ->required()
      ->check(CLI::IsMember({"entropy", "avalanche", "randomness", "ops", "kpa"}));
  CommonOpts ao;
  ao.shape = "8x10";
  add_common(ana, ao, true);
  std::size_t ana_trials = 1000, ana_sessions = 20;
  ana->add_option("--trials", ana_trials, "trial count (avalanche, kpa)");
  ana->add_option("--sessions", ana_sessions, "session count (entropy, randomness)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand("params")) return cmd_params(params_p, params_g);
    if (app.got_subcommand("demo")) return cmd_demo();
    if (app.got_subcommand("exchange")) return cmd_exchange(xo);
    if (app.got_subcommand("encrypt"))
      return cmd_encrypt(eo, enc_in, enc_out, enc_secret_a, enc_secret_b, enc_peer);
    if (app.got_subcommand("decrypt"))
      return cmd_decrypt(dec_in, dec_out, dec_secret, dec_offsets);
    if (app.got_subcommand("analyze")) {
      if (kind == "ops") return analyze_ops(ao.shape);
      if (kind == "entropy") return analyze_entropy(ao, ana_sessions);
      if (kind == "avalanche") {
        if (ana->count("--trials") == 0) ana_trials = 1000;
        return analyze_avalanche(ao, ana_trials);
      }
      if (kind == "randomness") {
        if (ana->count("--sessions") == 0) ana_sessions = 50;
        if (ana->count("--shape") == 0) ao.shape = "12x23";
        return analyze_randomness(ao, ana_sessions);
      }
      if (kind == "kpa") {
        if (ana->count("--trials") == 0) ana_trials = 100;
        return analyze_kpa(ao, ana->count("--prime") > 0, ana_trials);
      }
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
