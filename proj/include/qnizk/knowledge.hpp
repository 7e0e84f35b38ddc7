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

#ifndef QNIZK_KNOWLEDGE_HPP_
#define QNIZK_KNOWLEDGE_HPP_

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qnizk/protocol.hpp"

namespace qnizk {

// ---------------------------------------------------------------------------
// Prover oracle
//
// Extractors never reach into a prover beyond this surface: they may run the
// machine forward, run it backward, and read the message register. The
// wrapped party object keeps its internal state to itself.
// ---------------------------------------------------------------------------

class ProverOracle {
 public:
  explicit ProverOracle(ProverParty& party) : party_(&party) {}

  void invoke(const SessionContext& ctx, const PreprocessingMessage& msg,
              Rng& rng) {
    require(!message_.has_value(), "ProverOracle: invoke without uncompute");
    message_ = party_->respond(ctx, msg, rng);
  }

  // Undoes the last invocation; the message register is cleared.
  void inverse_invoke() {
    require(message_.has_value(), "ProverOracle: nothing to invert");
    message_.reset();
  }

  bool has_message() const { return message_.has_value(); }

  const ProverMessage& message() const {
    require(message_.has_value(), "ProverOracle: message register empty");
    return *message_;
  }

 private:
  ProverParty* party_;
  std::optional<ProverMessage> message_;
};

// ---------------------------------------------------------------------------
// Extraction target quantities
// ---------------------------------------------------------------------------

// Expectation of the r-th extended check on a bare logical state. Checks
// 1..m are the reduction terms; check m+1 penalizes a not-yet-started clock
// whose instance register disagrees with x.
inline double extended_term_energy(const Hamiltonian& h, const BitVec& x,
                                   uint32_t r, const Vec& psi) {
  uint32_t p = h.num_qubits();
  require(static_cast<size_t>(psi.size()) == dim(p),
          "extended_term_energy: state width");
  require(r >= 1 && r <= h.num_terms() + 1, "extended_term_energy: index");
  if (r <= h.num_terms()) {
    const Term& t = h.terms[r - 1];
    Vec img = apply_op(psi, t.mat, t.qubits, p);
    return std::real(psi.dot(img));
  }
  uint32_t n = h.circuit.n_instance;
  if (n == 0) {
    return 0.0;
  }
  Vec phi = apply_op(psi, detail::pi0_1q(), {h.clock_qubit(1)}, p);
  std::vector<uint32_t> inst(n);
  for (uint32_t i = 0; i < n; ++i) {
    inst[i] = h.data_qubit(i);
  }
  Vec xs = basis_state(n, x);
  Mat xx = xs * xs.adjoint();
  Vec matched = apply_op(phi, xx, inst, p);
  return std::real(phi.dot(phi)) - std::real(matched.dot(matched));
}

inline double mean_extended_energy(const Hamiltonian& h, const BitVec& x,
                                   const Vec& psi) {
  double sum = 0;
  for (uint32_t r = 1; r <= h.num_terms() + 1; ++r) {
    sum += extended_term_energy(h, x, r, psi);
  }
  return sum / (h.num_terms() + 1);
}

inline Mat circuit_unitary(const Circuit& c) {
  uint32_t D = c.data_qubits();
  require(D <= 12, "circuit_unitary: too wide for a dense matrix");
  Mat u = Mat::Identity(dim(D), dim(D));
  for (const CGate& g : c.gates) {
    u = embed_op(circuit_gate_matrix(g.kind), {g.a, g.b}, D) * u;
  }
  return u;
}

// Witness quality of a decoded register state: condition the instance
// register on x, reduce to the witness register, feed the circuit on fresh
// ancillas, and read the output wire. The instance projection is part of
// the measured probability, so a state carrying the wrong instance scores
// near zero even if its witness register is perfect.
inline double witness_quality(const Hamiltonian& h, const BitVec& x,
                              const Vec& psi) {
  const Circuit& c = h.circuit;
  uint32_t p = h.num_qubits();
  require(static_cast<size_t>(psi.size()) == dim(p),
          "witness_quality: state width");
  Vec phi = psi;
  for (uint32_t i = 0; i < c.n_instance; ++i) {
    const Mat& pin = x[i] ? detail::pi1_1q() : detail::pi0_1q();
    phi = apply_op(phi, pin, {h.data_qubit(i)}, p);
  }
  std::vector<uint32_t> wit(c.c_witness);
  for (uint32_t i = 0; i < c.c_witness; ++i) {
    wit[i] = h.data_qubit(c.n_instance + i);
  }
  Mat sigma_w = reduced_density(phi, wit, p);

  Mat rho_in = sigma_w;
  if (c.n_instance) {
    Vec xs = basis_state(c.n_instance, x);
    rho_in = kron(Mat(xs * xs.adjoint()), rho_in);
  }
  if (c.m_ancilla) {
    Vec anc = ket0n(c.m_ancilla);
    rho_in = kron(rho_in, Mat(anc * anc.adjoint()));
  }
  Mat u = circuit_unitary(c);
  Mat rho_out = u * rho_in * u.adjoint();
  Mat acc = embed_op(detail::pi1_1q(), {0}, c.data_qubits());
  return std::real((acc * rho_out).trace());
}

// ---------------------------------------------------------------------------
// Extraction results
// ---------------------------------------------------------------------------

struct ExtractedWitness {
  bool bot = true;
  Mat state;                           // decoded logical density matrix
  double energy = 0.0;                 // mean extended-check expectation
  double quality = 0.0;                // circuit acceptance of the witness
  double acceptance_probability = -1;  // filled by the caller when measured
  std::string diagnostic;
  SessionSeeds seeds{};
};

inline nlohmann::json extraction_report_json(const ExtractedWitness& w) {
  return {{"success", !w.bot},
          {"bot", w.bot},
          {"energy", w.bot ? nlohmann::json() : nlohmann::json(w.energy)},
          {"quality", w.bot ? nlohmann::json() : nlohmann::json(w.quality)},
          {"acceptance_probability",
           w.acceptance_probability < 0
               ? nlohmann::json()
               : nlohmann::json(w.acceptance_probability)},
          {"diagnostic", w.diagnostic},
          {"seeds",
           {{"setup", w.seeds.setup},
            {"verifier", w.seeds.verifier},
            {"prover", w.seeds.prover}}}};
}

namespace detail {

inline ExtractedWitness bot_witness(std::string why, const SessionSeeds& s) {
  ExtractedWitness w;
  w.bot = true;
  w.diagnostic = std::move(why);
  w.seeds = s;
  return w;
}

// Shared tail of both extractors: check the opened keys against the held
// registers, then decode. With matching keys the unpad, the permutation
// inverse, the trap strip, and the per-block ideal decoder compose to the
// identity on the logical register, which the channel kept in factored form.
inline ExtractedWitness decode_captured(const Hamiltonian& h, const BitVec& x,
                                        const AuthKeys& opened,
                                        const EncodedState& held,
                                        const SessionSeeds& seeds) {
  if (auth_keys_to_bits(opened) != auth_keys_to_bits(held.keys)) {
    return bot_witness("opened keys do not match the delivered registers",
                       seeds);
  }
  if (opened.n_logical != h.num_qubits()) {
    return bot_witness("opened keys cover the wrong register count", seeds);
  }
  ExtractedWitness w;
  w.bot = false;
  w.seeds = seeds;
  const Vec& psi = held.logical;
  w.state = psi * psi.adjoint();
  w.energy = mean_extended_energy(h, x, psi);
  w.quality = witness_quality(h, x, psi);
  return w;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Argument-of-quantum-knowledge extractor
//
// Samples its own CRS so it knows the prover-side commitment secret, runs
// one honest session against the prover, recovers the committed encoding
// keys straight from sigma_keys, and decodes the registers the prover
// delivered through the channel.
// ---------------------------------------------------------------------------

inline ExtractedWitness extract_aoqk(ProverOracle& prover, const BitVec& x,
                                     const SessionParams& params, Rng& rng) {
  SessionParams ps = params;
  ps.x = x;
  SessionSeeds seeds{rng.next_u64(), rng.next_u64(), rng.next_u64()};
  Rng srng(seeds.setup);
  SetupResult setup = setup_crs_with_secrets(ps, srng);
  SessionContext ctx = make_context(ps, setup.crs);
  Rng vrng(seeds.verifier);
  auto [st, msg] = verifier_preprocess(ctx, vrng);
  msg.epr->enable_capture();
  Rng prng(seeds.prover);
  prover.invoke(ctx, msg, prng);
  ProverMessage reply = prover.message();
  prover.inverse_invoke();

  auto opening = com_recover(ctx.crs.pk_p, setup.secrets.sk_p,
                             reply.sigma_keys);
  if (!opening) {
    return detail::bot_witness("commitment recovery failed", seeds);
  }
  AuthKeys opened;
  try {
    opened = auth_keys_from_bits(opening->payload);
  } catch (const Error&) {
    return detail::bot_witness("opening is not a key encoding", seeds);
  }
  if (!msg.epr->teleported()) {
    return detail::bot_witness("prover never used the channel", seeds);
  }
  return detail::decode_captured(*ctx.h, x, opened, msg.epr->captured_state(),
                                 seeds);
}

// ---------------------------------------------------------------------------
// Proof-of-quantum-knowledge extractor
//
// The sigma-protocol variant sends the encoded state in the clear together
// with the key commitment and a proof of knowledge of its opening. The
// extractor runs the proof system's extraction hook instead of a trapdoor.
// ---------------------------------------------------------------------------

struct BjswFirstMessage {
  EncodedState state;
  Commitment sigma_keys;
  NizkProof pok;
};

struct BjswSetup {
  ComPublicKey pk_p;
  std::shared_ptr<NizkBackend> backend;
  NizkSetup nizk;
};

inline Bytes bjsw_pok_statement(const ComPublicKey& pk,
                                const Commitment& com) {
  nlohmann::json j = {{"pk", pk.fingerprint},
                      {"com", com_to_json(com)}};
  return bytes_of(j.dump());
}

inline BjswSetup make_bjsw_setup(const ComPublicKey& pk_p, Rng& rng) {
  BjswSetup s;
  s.pk_p = pk_p;
  auto relation = [pk_p](const Bytes& stmt, const Bytes& wit) -> bool {
    try {
      nlohmann::json sj = nlohmann::json::parse(string_of(stmt));
      Commitment com = com_from_json(sj.at("com"));
      nlohmann::json wj = nlohmann::json::parse(string_of(wit));
      BitVec keys_bits = from_hex(wj.at("keys").get<std::string>(),
                                  wj.at("keys_bits").get<size_t>());
      uint64_t s_p = wj.at("s_p").get<uint64_t>();
      return com_verify(pk_p, com, keys_bits, s_p);
    } catch (const std::exception&) {
      return false;
    }
  };
  s.backend = std::make_shared<AttestationBackend>(relation);
  s.nizk = s.backend->setup(rng);
  return s;
}

class BjswProver {
 public:
  virtual ~BjswProver() = default;
  virtual BjswFirstMessage first_message(const BjswSetup& setup,
                                         const Hamiltonian& h, const BitVec& x,
                                         uint32_t level, Rng& rng) = 0;
};

class BjswOracle {
 public:
  explicit BjswOracle(BjswProver& party) : party_(&party) {}

  void invoke(const BjswSetup& setup, const Hamiltonian& h, const BitVec& x,
              uint32_t level, Rng& rng) {
    require(!message_.has_value(), "BjswOracle: invoke without uncompute");
    message_ = party_->first_message(setup, h, x, level, rng);
  }

  void inverse_invoke() {
    require(message_.has_value(), "BjswOracle: nothing to invert");
    message_.reset();
  }

  const BjswFirstMessage& message() const {
    require(message_.has_value(), "BjswOracle: message register empty");
    return *message_;
  }

 private:
  BjswProver* party_;
  std::optional<BjswFirstMessage> message_;
};

class HonestBjswProver : public BjswProver {
 public:
  explicit HonestBjswProver(Vec witness) : witness_(std::move(witness)) {}

  BjswFirstMessage first_message(const BjswSetup& setup, const Hamiltonian& h,
                                 const BitVec& x, uint32_t level,
                                 Rng& rng) override {
    AuthKeys keys = sample_auth_keys(rng, h.num_qubits(), level);
    BjswFirstMessage out;
    out.state = auth_encode(keys, history_state(h, x, witness_));
    uint64_t s_p = rng.next_u64();
    BitVec keys_bits = auth_keys_to_bits(keys);
    out.sigma_keys = com_commit(setup.pk_p, keys_bits, s_p);
    Bytes stmt = bjsw_pok_statement(setup.pk_p, out.sigma_keys);
    Bytes wit = witness_bytes(keys_bits, s_p);
    auto proof = setup.backend->prove(setup.nizk.crs, stmt, wit, rng);
    require(proof.has_value(), "HonestBjswProver: proof refused");
    out.pok = *proof;
    return out;
  }

 private:
  Vec witness_;
};

inline ExtractedWitness extract_poqk(BjswOracle& prover, const BitVec& x,
                                     const SessionParams& params, Rng& rng) {
  SessionParams ps = params;
  ps.x = x;
  ps.validate();
  SessionSeeds seeds{rng.next_u64(), rng.next_u64(), rng.next_u64()};
  Rng srng(seeds.setup);
  ComKeyPair prover_com = com_gen(ps.com, srng);
  BjswSetup setup = make_bjsw_setup(prover_com.pk, srng);
  Hamiltonian h = reduce_circuit(ps.circuit, Frame::kDressed);

  Rng prng(seeds.prover);
  prover.invoke(setup, h, x, ps.level, prng);
  BjswFirstMessage first = prover.message();
  prover.inverse_invoke();

  Bytes stmt = bjsw_pok_statement(setup.pk_p, first.sigma_keys);
  if (!setup.backend->verify(setup.nizk.crs, stmt, first.pok)) {
    return detail::bot_witness("proof of knowledge rejected", seeds);
  }
  if (first.pok.escrow.empty()) {
    return detail::bot_witness("extraction hook returned nothing", seeds);
  }
  BitVec keys_bits;
  uint64_t s_p = 0;
  try {
    nlohmann::json wj = nlohmann::json::parse(string_of(first.pok.escrow));
    keys_bits = from_hex(wj.at("keys").get<std::string>(),
                         wj.at("keys_bits").get<size_t>());
    s_p = wj.at("s_p").get<uint64_t>();
  } catch (const std::exception&) {
    return detail::bot_witness("extracted opening malformed", seeds);
  }
  if (!com_verify(setup.pk_p, first.sigma_keys, keys_bits, s_p)) {
    return detail::bot_witness("extracted opening fails the relation", seeds);
  }
  AuthKeys opened;
  try {
    opened = auth_keys_from_bits(keys_bits);
  } catch (const Error&) {
    return detail::bot_witness("opening is not a key encoding", seeds);
  }
  return detail::decode_captured(h, x, opened, first.state, seeds);
}

// ---------------------------------------------------------------------------
// Ideal decoder channel for one code block
// ---------------------------------------------------------------------------

// Corrects a single-block density matrix onto the code space and inverts the
// encoding isometry. Dense inputs exist at one concatenation level only.
inline Mat phi_decode(const Mat& block_rho) {
  return steane_decode_block(block_rho);
}

// ---------------------------------------------------------------------------
// Simulated witnesses
// ---------------------------------------------------------------------------

struct SimulatedWitness {
  uint32_t r = 0;
  Vec state;
};

// A state that passes challenge r with certainty: for a reduction term,
// rotate a basis vector that the projected pattern cannot produce into the
// term's frame; for the instance check, a stopped clock holding x.
inline SimulatedWitness build_simulated_witness(const Hamiltonian& h,
                                                const BitVec& x, uint32_t r) {
  uint32_t p = h.num_qubits();
  require(r >= 1 && r <= h.num_terms() + 1,
          "build_simulated_witness: challenge range");
  SimulatedWitness out;
  out.r = r;
  if (r <= h.num_terms()) {
    const Term& t = h.terms[r - 1];
    require(!t.proj.empty(), "build_simulated_witness: term projects nothing");
    BitVec marked(p, 0);
    marked[t.qubits[t.proj[0]]] = 1;
    Vec base = basis_state(p, marked);
    out.state = apply_op(base, Mat(t.conj.adjoint()), t.qubits, p);
  } else {
    require(x.size() == h.circuit.n_instance,
            "build_simulated_witness: instance width");
    BitVec bits(p, 0);
    for (uint32_t i = 0; i < x.size(); ++i) {
      bits[h.data_qubit(i)] = x[i];
    }
    out.state = basis_state(p, bits);
  }
  double e = extended_term_energy(h, x, r, out.state);
  require(e <= 1e-9, "build_simulated_witness: construction misses kernel");
  return out;
}

// ---------------------------------------------------------------------------
// Zero-knowledge simulator
//
// Owns the CRS secrets, recovers the committed challenge from the
// verifier's preprocessing, and replays the prover pipeline with three
// substitutions: the witness state becomes the challenge-specific kernel
// state, the key commitment binds a fixed key independent of the one that
// encodes, and the homomorphic program emits a simulated proof after the
// same commitment-opening gate the honest program applies. No witness
// parameter exists anywhere on this path.
// ---------------------------------------------------------------------------

namespace detail {

inline AuthKeys fixed_auth_keys(uint32_t n_logical, uint32_t level) {
  Rng pinned(0);
  return sample_auth_keys(pinned, n_logical, level);
}

inline HostProgram make_simulator_program(const SessionContext& ctx,
                                          const Bytes& nizk_trapdoor,
                                          const Commitment& sigma,
                                          const Commitment& sigma_keys,
                                          const BitVec& d,
                                          uint64_t simulate_seed) {
  auto nizk = ctx.nizk;
  ComPublicKey pk_v = ctx.crs.pk_v;
  NizkCrs gamma = ctx.crs.gamma;
  BitVec x = ctx.params.x;
  HostProgram prog;
  prog.name = "predicate-and-prove";
  prog.run = [nizk, nizk_trapdoor, pk_v, gamma, x, sigma, sigma_keys, d,
              simulate_seed](const Bytes& plain) -> Bytes {
    try {
      nlohmann::json j = nlohmann::json::parse(string_of(plain));
      uint32_t r = j.at("r").get<uint32_t>();
      uint64_t s_v = j.at("s_v").get<uint64_t>();
      BitVec z = from_hex(j.at("z").get<std::string>(),
                          j.at("z_bits").get<size_t>());
      if (!com_verify(pk_v, sigma, uint_to_bits(r, 8), s_v)) {
        return bot_marker();
      }
      Bytes stmt = statement_bytes(sigma_keys, r, z, d, x);
      Rng srng(simulate_seed);
      NizkProof proof = nizk->simulate(gamma, nizk_trapdoor, stmt, srng);
      return bytes_of(nizk_proof_to_json(proof).dump());
    } catch (const std::exception&) {
      return bot_marker();
    }
  };
  return prog;
}

}  // namespace detail

inline Transcript zk_simulate_seeded(VerifierParty& verifier, const BitVec& x,
                                     const SessionParams& params,
                                     const SessionSeeds& seeds) {
  SessionParams ps = params;
  ps.x = x;
  Rng srng(seeds.setup);
  SetupResult setup = setup_crs_with_secrets(ps, srng);
  SessionContext ctx = make_context(ps, setup.crs);
  Rng vrng(seeds.verifier);
  auto [st, msg] = verifier.preprocess(ctx, vrng);

  Rng prng(seeds.prover);
  uint32_t r_sim = ctx.m() + 1;
  auto rec = com_recover(ctx.crs.pk_v, setup.secrets.sk_v, msg.sigma);
  if (rec && rec->payload.size() == 8) {
    size_t cand = bits_to_uint(rec->payload);
    if (cand >= 1 && cand <= ctx.m() + 1) {
      r_sim = static_cast<uint32_t>(cand);
    }
  }
  // Unrecoverable commitments keep the instance-check state; the opening
  // gate inside the program then fails on every candidate the ciphertext
  // can offer, which is exactly the honest prover's refusal.
  SimulatedWitness rho = build_simulated_witness(*ctx.h, x, r_sim);

  AuthKeys keys = sample_auth_keys(prng, ctx.p(), ps.level);
  EncodedState enc = auth_encode(keys, rho.state);
  uint64_t s_p = prng.next_u64();
  AuthKeys fixed = detail::fixed_auth_keys(ctx.p(), ps.level);
  Commitment sigma_keys =
      com_commit(ctx.crs.pk_p, auth_keys_to_bits(fixed), s_p);
  BitVec d = sample_d(keys, prng);
  require(msg.epr != nullptr, "zk_simulate: missing channel");
  msg.epr->teleport(enc, d);
  FheCiphertext alpha = msg.epr->alpha();
  HostProgram prog = detail::make_simulator_program(
      ctx, setup.secrets.nizk_trapdoor, msg.sigma, sigma_keys, d,
      prng.next_u64());
  FheCiphertext evaluated = fhe_eval(msg.pk_e, prog, alpha);
  ProverMessage reply;
  reply.d = d;
  reply.sigma_keys = sigma_keys;
  reply.proof_ct = fhe_refresh(msg.pk_e, evaluated, prng);

  Transcript t;
  t.crs = setup.crs;
  t.pk_e = msg.pk_e;
  t.sigma = msg.sigma;
  require(msg.epr->teleported(), "zk_simulate: channel unused");
  t.alpha = msg.epr->alpha();
  t.d = reply.d;
  t.sigma_keys = reply.sigma_keys;
  t.proof_ct = reply.proof_ct;
  t.x = ps.x;
  t.decision = verifier.decide(ctx, st, reply, ps.x);
  t.seeds = seeds;
  return t;
}

inline Transcript zk_simulate(VerifierParty& verifier, const BitVec& x,
                              const SessionParams& params, Rng& rng) {
  SessionSeeds seeds{rng.next_u64(), rng.next_u64(), rng.next_u64()};
  return zk_simulate_seeded(verifier, x, params, seeds);
}

// ---------------------------------------------------------------------------
// Measured acceptance
// ---------------------------------------------------------------------------

// Runs one session with the preprocessing challenge pinned.
inline int run_forced_challenge_session(const SessionContext& ctx, uint32_t r,
                                        ProverParty& prover, Rng& vrng,
                                        Rng& prng) {
  auto [st, msg] = verifier_preprocess_with_r(ctx, r, vrng);
  ProverMessage reply = prover.respond(ctx, msg, prng);
  return verifier_decide(ctx, st, reply, ctx.params.x);
}

// Acceptance estimate stratified by challenge, combined with the exact
// weights of the challenge draw. The only variance left comes from the
// measurement randomness inside each stratum.
inline double measure_acceptance_stratified(const SessionContext& ctx,
                                            ProverParty& prover,
                                            uint32_t per_challenge,
                                            uint64_t seed) {
  uint32_t m = ctx.m();
  uint32_t n = ctx.n();
  require(per_challenge >= 1, "measure_acceptance: empty strata");
  Rng root(seed);
  double total = 0;
  for (uint32_t r = 1; r <= m + 1; ++r) {
    double weight = r <= m ? 1.0 / (m + n)
                           : static_cast<double>(n) / (m + n);
    if (weight == 0.0) {
      continue;
    }
    int hits = 0;
    for (uint32_t it = 0; it < per_challenge; ++it) {
      Rng vrng(root.next_u64());
      Rng prng(root.next_u64());
      hits += run_forced_challenge_session(ctx, r, prover, vrng, prng);
    }
    total += weight * hits / per_challenge;
  }
  return total;
}

}  // namespace qnizk

#endif  // QNIZK_KNOWLEDGE_HPP_
