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

#include <functional>
#include <memory>

#include "qnizk/knowledge.hpp"
#include "qnizk/protocol.hpp"

namespace qnizk {

// Cheating prover template: runs the full honest pipeline (keys, commitment,
// teleport, circuit, refresh) on a substituted logical state. Acceptance
// then equals the probability that the substituted state passes the
// verifier's challenge, which the fixtures compute analytically.
class StateOverrideProver : public ProverParty {
 public:
  using StateBuilder = std::function<Vec(const SessionContext&)>;

  explicit StateOverrideProver(StateBuilder build) : build_(std::move(build)) {}

  ProverMessage respond(const SessionContext& ctx,
                        const PreprocessingMessage& msg, Rng& rng) override {
    return prover_respond_with_state(ctx, msg, build_(ctx), rng);
  }

 private:
  StateBuilder build_;
};

// A1: no witness at all; encodes |0...0> across clock and data.
inline std::unique_ptr<ProverParty> make_witnessless_prover() {
  return std::make_unique<StateOverrideProver>(
      [](const SessionContext& ctx) { return ket0n(ctx.p()); });
}

// A2: a well-formed history state, but for the flipped instance.
inline std::unique_ptr<ProverParty> make_wrong_instance_prover(Vec witness) {
  return std::make_unique<StateOverrideProver>(
      [witness = std::move(witness)](const SessionContext& ctx) {
        BitVec flipped = ctx.params.x;
        for (uint8_t& b : flipped) {
          b ^= 1;
        }
        return history_state(*ctx.h, flipped, witness);
      });
}

// A4: behaves honestly on the channel and in the proof, then flips a
// teleportation bit in the outgoing message only. The statement inside the
// ciphertext keeps the true d, so the verifier's d-consistency check fires.
class DTamperProver : public ProverParty {
 public:
  explicit DTamperProver(Vec witness) : witness_(std::move(witness)) {}

  ProverMessage respond(const SessionContext& ctx,
                        const PreprocessingMessage& msg, Rng& rng) override {
    ProverMessage out = prover_respond(ctx, msg, witness_, rng);
    out.d[0] ^= 1;
    return out;
  }

 private:
  Vec witness_;
};

// Dishonest verifier: sigma commits to the sampled r, but alpha encrypts a
// different challenge index. The prover-side circuit must refuse with an
// encrypted bottom, leaking nothing about which check failed.
class MismatchedAlphaVerifier : public VerifierParty {
 public:
  std::pair<VerifierState, PreprocessingMessage> preprocess(
      const SessionContext& ctx, Rng& rng) override {
    uint32_t m = ctx.m();
    uint32_t n = ctx.n();
    uint32_t r_prime = 1 + static_cast<uint32_t>(rng.below(m + n));
    uint32_t r = collapse_challenge(m, n, r_prime);
    uint64_t s_v = rng.next_u64();
    Commitment sigma = com_commit(ctx.crs.pk_v, uint_to_bits(r, 8), s_v);
    FheKeyPair fhe = fhe_gen(rng);
    Challenge measured = make_protocol_challenge(*ctx.h, r, BitVec(n, 0));
    uint32_t r_enc = r == 1 ? 2 : 1;
    auto epr = std::make_shared<EprChannel>(measured, fhe.pk, r_enc, s_v,
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

  int decide(const SessionContext& ctx, const VerifierState& st,
             const ProverMessage& msg, const BitVec& x) override {
    return verifier_decide(ctx, st, msg, x);
  }
};

// Bets everything on one challenge: encodes a state that passes check
// r_guess with certainty and takes its chances on the others.
inline std::unique_ptr<StateOverrideProver> make_term_guess_prover(
    uint32_t r_guess) {
  return std::make_unique<StateOverrideProver>(
      [r_guess](const SessionContext& ctx) {
        return build_simulated_witness(*ctx.h, ctx.params.x, r_guess).state;
      });
}

}  // namespace qnizk
