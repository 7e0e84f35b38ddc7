// Copyright 2026 The qnizk authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <utility>

#include "qnizk/commitment.hpp"
#include "qnizk/fhe.hpp"
#include "qnizk/nizk.hpp"
#include "qnizk/predicates.hpp"

namespace qnizk {

struct SessionParams {
  Circuit circuit;
  BitVec x;            // instance bits, one per instance wire
  uint32_t level = 1;  // authentication code concatenation level
  ComParams com;

  void validate() const {
    circuit.validate();
    require(x.size() == circuit.n_instance, "SessionParams: instance width");
    require(level >= 1 && level <= 2, "SessionParams: level");
    com.validate();
  }
};

// Common reference string: a NIZK crs plus one commitment key per party.
// The prover commits to encoding keys under pk_p; the verifier commits to
// its challenge under pk_v. The pairs are sampled independently.
struct Crs {
  NizkCrs gamma;
  ComPublicKey pk_p;
  ComPublicKey pk_v;
};

// Setup-time secrets. Honest sessions discard them; the extractors keep
// sk_p, the zero-knowledge simulator keeps sk_v and the NIZK trapdoor.
struct CrsSecrets {
  ComSecretKey sk_p;
  ComSecretKey sk_v;
  Bytes nizk_trapdoor;
};

struct SetupResult {
  Crs crs;
  CrsSecrets secrets;
};

inline Bytes bot_marker() { return {0xff, 'B', 'O', 'T'}; }

// Wire form of the encoding keys, the exact payload of sigma_keys. Layout:
// level(2) | n_logical(8) | traps(2 each) | pi(8 each) | a | b.
inline BitVec auth_keys_to_bits(const AuthKeys& k) {
  BitVec out = uint_to_bits(k.level, 2);
  out = concat(out, uint_to_bits(k.n_logical, 8));
  for (Trap t : k.traps) {
    out = concat(out, uint_to_bits(static_cast<uint64_t>(t), 2));
  }
  for (uint32_t v : k.pi) {
    out = concat(out, uint_to_bits(v, 8));
  }
  out = concat(out, k.a);
  out = concat(out, k.b);
  return out;
}

inline AuthKeys auth_keys_from_bits(const BitVec& bits) {
  size_t cur = 0;
  auto take = [&](size_t n) {
    require(cur + n <= bits.size(), "auth_keys_from_bits: truncated");
    BitVec part = slice(bits, cur, n);
    cur += n;
    return part;
  };
  AuthKeys k;
  k.level = static_cast<uint32_t>(bits_to_uint(take(2)));
  require(k.level >= 1 && k.level <= 2, "auth_keys_from_bits: level");
  k.n_logical = static_cast<uint32_t>(bits_to_uint(take(8)));
  require(k.n_logical >= 1, "auth_keys_from_bits: blocks");
  uint32_t N = k.block_len();
  for (uint32_t i = 0; i < k.n_logical * N; ++i) {
    uint64_t t = bits_to_uint(take(2));
    require(t <= 2, "auth_keys_from_bits: trap value");
    k.traps.push_back(static_cast<Trap>(t));
  }
  for (uint32_t i = 0; i < 2 * N; ++i) {
    k.pi.push_back(static_cast<uint32_t>(bits_to_uint(take(8))));
  }
  k.a = take(k.total_wires());
  k.b = take(k.total_wires());
  require(cur == bits.size(), "auth_keys_from_bits: trailing bits");
  k.validate();
  return k;
}

inline Challenge make_protocol_challenge(const Hamiltonian& h, uint32_t r,
                                         const BitVec& x) {
  require(r >= 1 && r <= h.num_terms() + 1, "make_protocol_challenge: range");
  return r <= h.num_terms() ? make_term_challenge(h, r)
                            : make_instance_challenge(h, x);
}

// Canonical statement the NIZK binds: there exist encoding keys and
// commitment randomness opening sigma_keys such that the measured z passes
// the challenge-r predicate with corrections d on instance x.
inline Bytes statement_bytes(const Commitment& sigma_keys, uint32_t r,
                             const BitVec& z, const BitVec& d,
                             const BitVec& x) {
  nlohmann::json j = {{"sigma_keys", com_to_json(sigma_keys)},
                      {"r", r},
                      {"z", to_hex(z)},
                      {"z_bits", z.size()},
                      {"d", to_hex(d)},
                      {"d_bits", d.size()},
                      {"x", to_hex(x)},
                      {"x_bits", x.size()}};
  return bytes_of(j.dump());
}

inline Bytes witness_bytes(const BitVec& keys_bits, uint64_t s_p) {
  nlohmann::json j = {{"keys", to_hex(keys_bits)},
                      {"keys_bits", keys_bits.size()},
                      {"s_p", s_p}};
  return bytes_of(j.dump());
}

// The NP relation behind gamma, shared by the prover's circuit C and the
// knowledge analysis: the witness opens sigma_keys and its keys satisfy Q.
inline std::shared_ptr<NizkBackend> make_protocol_backend(
    std::shared_ptr<const Hamiltonian> h, const ComPublicKey& pk_p) {
  NizkRelation rel = [h, pk_p](const Bytes& stmt, const Bytes& wit) -> bool {
    try {
      nlohmann::json sj = nlohmann::json::parse(string_of(stmt));
      nlohmann::json wj = nlohmann::json::parse(string_of(wit));
      Commitment sigma_keys = com_from_json(sj.at("sigma_keys"));
      uint32_t r = sj.at("r").get<uint32_t>();
      BitVec z = from_hex(sj.at("z").get<std::string>(),
                          sj.at("z_bits").get<size_t>());
      BitVec d = from_hex(sj.at("d").get<std::string>(),
                          sj.at("d_bits").get<size_t>());
      BitVec x = from_hex(sj.at("x").get<std::string>(),
                          sj.at("x_bits").get<size_t>());
      BitVec keys_bits = from_hex(wj.at("keys").get<std::string>(),
                                  wj.at("keys_bits").get<size_t>());
      uint64_t s_p = wj.at("s_p").get<uint64_t>();
      if (!com_verify(pk_p, sigma_keys, keys_bits, s_p)) {
        return false;
      }
      AuthKeys keys = auth_keys_from_bits(keys_bits);
      if (keys.n_logical != h->num_qubits()) {
        return false;
      }
      Challenge ch = make_protocol_challenge(*h, r, x);
      return eval_Q(keys, ch, z, d).pass();
    } catch (const std::exception&) {
      return false;
    }
  };
  return std::make_shared<AttestationBackend>(std::move(rel));
}

inline SetupResult setup_crs_with_secrets(const SessionParams& params,
                                          Rng& rng) {
  params.validate();
  ComKeyPair kp_p = com_gen(params.com, rng);
  ComKeyPair kp_v = com_gen(params.com, rng);
  auto h = std::make_shared<const Hamiltonian>(
      reduce_circuit(params.circuit, Frame::kDressed));
  auto backend = make_protocol_backend(h, kp_p.pk);
  NizkSetup ns = backend->setup(rng);
  SetupResult out;
  out.crs.gamma = ns.crs;
  out.crs.pk_p = kp_p.pk;
  out.crs.pk_v = kp_v.pk;
  out.secrets.sk_p = kp_p.sk;
  out.secrets.sk_v = kp_v.sk;
  out.secrets.nizk_trapdoor = ns.trapdoor;
  return out;
}

inline Crs setup_crs(const SessionParams& params, Rng& rng) {
  return setup_crs_with_secrets(params, rng).crs;
}

// Everything both parties derive deterministically from (params, crs).
struct SessionContext {
  SessionParams params;
  Crs crs;
  std::shared_ptr<const Hamiltonian> h;
  std::shared_ptr<NizkBackend> nizk;

  uint32_t m() const { return h->num_terms(); }
  uint32_t n() const { return params.circuit.n_instance; }
  uint32_t p() const { return h->num_qubits(); }
};

inline SessionContext make_context(const SessionParams& params,
                                   const Crs& crs) {
  params.validate();
  SessionContext ctx;
  ctx.params = params;
  ctx.crs = crs;
  ctx.h = std::make_shared<const Hamiltonian>(
      reduce_circuit(params.circuit, Frame::kDressed));
  ctx.nizk = make_protocol_backend(ctx.h, crs.pk_p);
  require(ctx.m() + 1 < 256, "make_context: challenge exceeds wire width");
  return ctx;
}

inline void validate_crs(const SessionContext& ctx) {
  require(ctx.crs.gamma.backend == ctx.nizk->name(),
          "validate_crs: backend mismatch");
  require(!ctx.crs.gamma.key.empty(), "validate_crs: empty nizk crs");
  require(ctx.crs.pk_p.fingerprint != ctx.crs.pk_v.fingerprint,
          "validate_crs: party keys coincide");
  require(ctx.crs.pk_p.params.q == ctx.params.com.q,
          "validate_crs: commitment parameters");
}

// Simulated transport for the preprocessing EPR pairs plus the verifier's
// challenge measurement. Physically the verifier measures its halves during
// preprocessing and the prover teleports later; the two actions commute, so
// the channel realizes the equivalent commuted order: the prover delivers
// its encoded state and corrections d, and the measurement outcome z is
// sampled here. alpha, which carries z, is therefore materialized lazily.
// The harness controls both parties, so this stays valid for adversarial
// provers; an order-invariance test referees it against the physical order.
class EprChannel {
 public:
  EprChannel(Challenge measured, FhePublicKey pk_e, uint32_t r_enc,
             uint64_t s_v_enc, Rng rng)
      : measured_(std::move(measured)),
        pk_e_(pk_e),
        r_enc_(r_enc),
        s_v_enc_(s_v_enc),
        rng_(std::move(rng)) {}

  void teleport(const EncodedState& state, const BitVec& d) {
    require(!teleported_, "EprChannel: teleport invoked twice");
    require(d.size() == 2 * state.keys.total_wires(),
            "EprChannel: correction length");
    if (capture_) {
      captured_ = state;
      captured_d_ = d;
    }
    BitVec pa = xored(state.keys.a, d_x_part(state.keys, d));
    BitVec pb = xored(state.keys.b, d_z_part(state.keys, d));
    z_ = measure_encoded(state, measured_.word, pa, pb, rng_);
    teleported_ = true;
  }

  bool teleported() const { return teleported_; }

  // Retains the registers delivered through the channel for an extractor
  // that plays the verifier side. Must be armed before teleportation.
  void enable_capture() {
    require(!teleported_, "EprChannel: capture armed after teleport");
    capture_ = true;
  }

  const EncodedState& captured_state() const {
    require(captured_.has_value(), "EprChannel: nothing captured");
    return *captured_;
  }

  const BitVec& captured_d() const {
    require(captured_.has_value(), "EprChannel: nothing captured");
    return captured_d_;
  }

  const BitVec& z() const {
    require(teleported_, "EprChannel: z read before teleport");
    return z_;
  }

  FheCiphertext alpha() {
    require(teleported_, "EprChannel: alpha requested before teleport");
    if (!alpha_) {
      nlohmann::json j = {{"r", r_enc_},
                          {"s_v", s_v_enc_},
                          {"z", to_hex(z_)},
                          {"z_bits", z_.size()}};
      alpha_ = fhe_enc(pk_e_, bytes_of(j.dump()), rng_);
    }
    return *alpha_;
  }

 private:
  Challenge measured_;
  FhePublicKey pk_e_;
  uint32_t r_enc_;
  uint64_t s_v_enc_;
  Rng rng_;
  bool teleported_ = false;
  bool capture_ = false;
  BitVec z_;
  std::optional<FheCiphertext> alpha_;
  std::optional<EncodedState> captured_;
  BitVec captured_d_;
};

struct PreprocessingMessage {
  FhePublicKey pk_e;
  Commitment sigma;
  std::shared_ptr<EprChannel> epr;
};

struct VerifierState {
  uint32_t r = 0;
  uint64_t s_v = 0;
  Commitment sigma;
  FheKeyPair fhe;
  std::shared_ptr<EprChannel> epr;
};

struct ProverMessage {
  BitVec d;  // teleportation corrections, 2 bits per wire
  Commitment sigma_keys;
  FheCiphertext proof_ct;
};

// Preprocessing with the challenge pinned; the sampling wrapper below is
// the protocol step, this entry exists for extractors and targeted tests.
inline std::pair<VerifierState, PreprocessingMessage> verifier_preprocess_with_r(
    const SessionContext& ctx, uint32_t r, Rng& rng) {
  uint32_t n = ctx.n();
  require(r >= 1 && r <= ctx.m() + 1, "verifier_preprocess: challenge range");
  uint64_t s_v = rng.next_u64();
  Commitment sigma = com_commit(ctx.crs.pk_v, uint_to_bits(r, 8), s_v);
  FheKeyPair fhe = fhe_gen(rng);
  // The measurement basis depends on r only; instance bits enter later
  // checks, so preprocessing stays instance-independent.
  Challenge measured = make_protocol_challenge(*ctx.h, r, BitVec(n, 0));
  auto epr = std::make_shared<EprChannel>(measured, fhe.pk, r, s_v,
                                          Rng(rng.next_u64()));
  VerifierState st;
  st.r = r;
  st.s_v = s_v;
  st.sigma = sigma;
  st.fhe = fhe;
  st.epr = epr;
  PreprocessingMessage msg;
  msg.pk_e = fhe.pk;
  msg.sigma = sigma;
  msg.epr = epr;
  return {std::move(st), std::move(msg)};
}

inline std::pair<VerifierState, PreprocessingMessage> verifier_preprocess(
    const SessionContext& ctx, Rng& rng) {
  uint32_t m = ctx.m();
  uint32_t n = ctx.n();
  uint32_t r_prime = 1 + static_cast<uint32_t>(rng.below(m + n));
  return verifier_preprocess_with_r(ctx, collapse_challenge(m, n, r_prime),
                                    rng);
}

// The prover's homomorphic circuit: open sigma against the encrypted
// challenge, evaluate Q on the encrypted measurement record, then prove.
// Any failure collapses to the bottom marker, so the verifier learns
// nothing beyond the single decision bit.
inline HostProgram make_prover_program(const SessionContext& ctx,
                                       const Commitment& sigma,
                                       const Commitment& sigma_keys,
                                       const BitVec& d,
                                       const BitVec& keys_bits, uint64_t s_p,
                                       uint64_t prove_seed) {
  auto h = ctx.h;
  auto nizk = ctx.nizk;
  ComPublicKey pk_v = ctx.crs.pk_v;
  NizkCrs gamma = ctx.crs.gamma;
  BitVec x = ctx.params.x;
  HostProgram prog;
  prog.name = "predicate-and-prove";
  prog.run = [h, nizk, pk_v, gamma, x, sigma, sigma_keys, d, keys_bits, s_p,
              prove_seed](const Bytes& plain) -> Bytes {
    try {
      nlohmann::json j = nlohmann::json::parse(string_of(plain));
      uint32_t r = j.at("r").get<uint32_t>();
      uint64_t s_v = j.at("s_v").get<uint64_t>();
      BitVec z = from_hex(j.at("z").get<std::string>(),
                          j.at("z_bits").get<size_t>());
      if (!com_verify(pk_v, sigma, uint_to_bits(r, 8), s_v)) {
        return bot_marker();
      }
      AuthKeys keys = auth_keys_from_bits(keys_bits);
      Challenge ch = make_protocol_challenge(*h, r, x);
      if (!eval_Q(keys, ch, z, d).pass()) {
        return bot_marker();
      }
      Bytes stmt = statement_bytes(sigma_keys, r, z, d, x);
      Bytes wit = witness_bytes(keys_bits, s_p);
      Rng prng(prove_seed);
      auto proof = nizk->prove(gamma, stmt, wit, prng);
      if (!proof) {
        return bot_marker();
      }
      return bytes_of(nizk_proof_to_json(*proof).dump());
    } catch (const std::exception&) {
      return bot_marker();
    }
  };
  return prog;
}

// Instance-dependent prover step on an explicit logical state. The honest
// prover passes the history state; adversary fixtures substitute others.
inline ProverMessage prover_respond_with_state(const SessionContext& ctx,
                                               const PreprocessingMessage& msg,
                                               const Vec& logical, Rng& rng) {
  AuthKeys keys = sample_auth_keys(rng, ctx.p(), ctx.params.level);
  EncodedState enc = auth_encode(keys, logical);
  uint64_t s_p = rng.next_u64();
  BitVec keys_bits = auth_keys_to_bits(keys);
  Commitment sigma_keys = com_commit(ctx.crs.pk_p, keys_bits, s_p);
  BitVec d = sample_d(keys, rng);
  require(msg.epr != nullptr, "prover_respond: missing channel");
  msg.epr->teleport(enc, d);
  FheCiphertext alpha = msg.epr->alpha();
  HostProgram prog = make_prover_program(ctx, msg.sigma, sigma_keys, d,
                                         keys_bits, s_p, rng.next_u64());
  FheCiphertext evaluated = fhe_eval(msg.pk_e, prog, alpha);
  ProverMessage out;
  out.d = d;
  out.sigma_keys = sigma_keys;
  out.proof_ct = fhe_refresh(msg.pk_e, evaluated, rng);
  return out;
}

inline ProverMessage prover_respond(const SessionContext& ctx,
                                    const PreprocessingMessage& msg,
                                    const Vec& witness, Rng& rng) {
  Vec hist = history_state(*ctx.h, ctx.params.x, witness);
  return prover_respond_with_state(ctx, msg, hist, rng);
}

inline int verifier_decide(const SessionContext& ctx, const VerifierState& st,
                           const ProverMessage& msg, const BitVec& x) {
  try {
    Bytes plain = fhe_dec(st.fhe.sk, msg.proof_ct);
    if (plain == bot_marker()) {
      return 0;
    }
    NizkProof proof =
        nizk_proof_from_json(nlohmann::json::parse(string_of(plain)));
    // The d received from the prover must be the d inside the statement;
    // checked on its own before the full statement comparison.
    nlohmann::json sj = nlohmann::json::parse(string_of(proof.stmt));
    BitVec stmt_d = from_hex(sj.at("d").get<std::string>(),
                             sj.at("d_bits").get<size_t>());
    if (stmt_d != msg.d) {
      return 0;
    }
    Bytes expected =
        statement_bytes(msg.sigma_keys, st.r, st.epr->z(), msg.d, x);
    if (proof.stmt != expected) {
      return 0;
    }
    return ctx.nizk->verify(ctx.crs.gamma, expected, proof) ? 1 : 0;
  } catch (const std::exception&) {
    return 0;
  }
}

class ProverParty {
 public:
  virtual ~ProverParty() = default;
  virtual ProverMessage respond(const SessionContext& ctx,
                                const PreprocessingMessage& msg, Rng& rng) = 0;
};

class VerifierParty {
 public:
  virtual ~VerifierParty() = default;
  virtual std::pair<VerifierState, PreprocessingMessage> preprocess(
      const SessionContext& ctx, Rng& rng) = 0;
  virtual int decide(const SessionContext& ctx, const VerifierState& st,
                     const ProverMessage& msg, const BitVec& x) = 0;
};

class HonestProver : public ProverParty {
 public:
  explicit HonestProver(Vec witness) : witness_(std::move(witness)) {}

  ProverMessage respond(const SessionContext& ctx,
                        const PreprocessingMessage& msg, Rng& rng) override {
    return prover_respond(ctx, msg, witness_, rng);
  }

 private:
  Vec witness_;
};

class HonestVerifier : public VerifierParty {
 public:
  std::pair<VerifierState, PreprocessingMessage> preprocess(
      const SessionContext& ctx, Rng& rng) override {
    return verifier_preprocess(ctx, rng);
  }

  int decide(const SessionContext& ctx, const VerifierState& st,
             const ProverMessage& msg, const BitVec& x) override {
    return verifier_decide(ctx, st, msg, x);
  }
};

struct SessionSeeds {
  uint64_t setup = 0;
  uint64_t verifier = 0;
  uint64_t prover = 0;
};

struct Transcript {
  uint32_t version = 1;
  Crs crs;
  FhePublicKey pk_e;
  Commitment sigma;
  FheCiphertext alpha;
  BitVec d;
  Commitment sigma_keys;
  FheCiphertext proof_ct;
  BitVec x;
  int decision = 0;
  SessionSeeds seeds;
};

inline nlohmann::json crs_to_json(const Crs& crs) {
  return {{"gamma",
           {{"backend", crs.gamma.backend}, {"key", bytes_hex(crs.gamma.key)}}},
          {"pk_p", com_pk_to_json(crs.pk_p)},
          {"pk_v", com_pk_to_json(crs.pk_v)}};
}

inline Crs crs_from_json(const nlohmann::json& j) {
  Crs crs;
  try {
    crs.gamma.backend = j.at("gamma").at("backend").get<std::string>();
    crs.gamma.key =
        bytes_from_hex(j.at("gamma").at("key").get<std::string>());
    crs.pk_p = com_pk_from_json(j.at("pk_p"));
    crs.pk_v = com_pk_from_json(j.at("pk_v"));
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("Crs: malformed JSON: ") + e.what());
  }
  return crs;
}

inline nlohmann::json transcript_to_json(const Transcript& t) {
  return {{"version", t.version},
          {"crs", crs_to_json(t.crs)},
          {"preprocessing",
           {{"pk_e", {{"hi", t.pk_e.id_hi}, {"lo", t.pk_e.id_lo}}},
            {"sigma", com_to_json(t.sigma)},
            {"alpha", fhe_ct_to_json(t.alpha)}}},
          {"prover",
           {{"d", to_hex(t.d)},
            {"d_bits", t.d.size()},
            {"sigma_keys", com_to_json(t.sigma_keys)},
            {"proof_ct", fhe_ct_to_json(t.proof_ct)}}},
          {"x", to_hex(t.x)},
          {"x_bits", t.x.size()},
          {"decision", t.decision},
          {"seeds",
           {{"setup", t.seeds.setup},
            {"verifier", t.seeds.verifier},
            {"prover", t.seeds.prover}}}};
}

inline Transcript transcript_from_json(const nlohmann::json& j) {
  Transcript t;
  try {
    t.version = j.at("version").get<uint32_t>();
    t.crs = crs_from_json(j.at("crs"));
    const auto& pre = j.at("preprocessing");
    t.pk_e.id_hi = pre.at("pk_e").at("hi").get<uint64_t>();
    t.pk_e.id_lo = pre.at("pk_e").at("lo").get<uint64_t>();
    t.sigma = com_from_json(pre.at("sigma"));
    t.alpha = fhe_ct_from_json(pre.at("alpha"));
    const auto& pr = j.at("prover");
    t.d = from_hex(pr.at("d").get<std::string>(),
                   pr.at("d_bits").get<size_t>());
    t.sigma_keys = com_from_json(pr.at("sigma_keys"));
    t.proof_ct = fhe_ct_from_json(pr.at("proof_ct"));
    t.x = from_hex(j.at("x").get<std::string>(), j.at("x_bits").get<size_t>());
    t.decision = j.at("decision").get<int>();
    t.seeds.setup = j.at("seeds").at("setup").get<uint64_t>();
    t.seeds.verifier = j.at("seeds").at("verifier").get<uint64_t>();
    t.seeds.prover = j.at("seeds").at("prover").get<uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("Transcript: malformed JSON: ") + e.what());
  }
  return t;
}

struct SessionResult {
  int decision = 0;
  uint32_t r = 0;  // verifier's sampled challenge, for harness statistics
  Transcript transcript;
};

inline SessionResult run_single(const SessionParams& params,
                                ProverParty& prover, VerifierParty& verifier,
                                const SessionSeeds& seeds) {
  Rng srng(seeds.setup);
  SetupResult setup = setup_crs_with_secrets(params, srng);
  SessionContext ctx = make_context(params, setup.crs);
  Rng vrng(seeds.verifier);
  auto [st, pmsg] = verifier.preprocess(ctx, vrng);
  Rng prng(seeds.prover);
  ProverMessage reply = prover.respond(ctx, pmsg, prng);
  SessionResult res;
  res.decision = verifier.decide(ctx, st, reply, params.x);
  res.r = st.r;
  res.transcript.crs = setup.crs;
  res.transcript.pk_e = pmsg.pk_e;
  res.transcript.sigma = pmsg.sigma;
  require(pmsg.epr != nullptr && pmsg.epr->teleported(),
          "run_single: prover never used the channel");
  res.transcript.alpha = pmsg.epr->alpha();
  res.transcript.d = reply.d;
  res.transcript.sigma_keys = reply.sigma_keys;
  res.transcript.proof_ct = reply.proof_ct;
  res.transcript.x = params.x;
  res.transcript.decision = res.decision;
  res.transcript.seeds = seeds;
  return res;
}

struct RepetitionConfig {
  uint32_t k = 1;      // parallel copies, accept iff all accept
  uint32_t n_seq = 1;  // sequential rounds of the whole protocol

  void validate() const {
    require(k >= 1 && n_seq >= 1, "RepetitionConfig: k, n_seq >= 1");
  }
};

struct SessionOutcome {
  int decision = 1;
  std::vector<uint32_t> challenges;
  std::vector<Transcript> transcripts;
};

inline SessionSeeds derive_session_seeds(uint64_t seed, uint64_t index) {
  Rng leaf = Rng(seed).derive("session", index);
  SessionSeeds s;
  s.setup = leaf.next_u64();
  s.verifier = leaf.next_u64();
  s.prover = leaf.next_u64();
  return s;
}

inline SessionOutcome run_session(const SessionParams& params,
                                  ProverParty& prover,
                                  VerifierParty& verifier,
                                  const RepetitionConfig& rep, uint64_t seed) {
  rep.validate();
  SessionOutcome out;
  for (uint32_t round = 0; round < rep.n_seq; ++round) {
    for (uint32_t copy = 0; copy < rep.k; ++copy) {
      uint64_t index = static_cast<uint64_t>(round) * rep.k + copy;
      SessionResult res =
          run_single(params, prover, verifier, derive_session_seeds(seed, index));
      out.decision &= res.decision;
      out.challenges.push_back(res.r);
      out.transcripts.push_back(std::move(res.transcript));
    }
  }
  return out;
}

}  // namespace qnizk
