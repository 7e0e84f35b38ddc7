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

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "qnizk/predicates.hpp"

namespace qnizk {
namespace {

TEST(ChallengeDraw, CollapsePinnedValues) {
  EXPECT_EQ(collapse_challenge(4, 3, 2), 2u);
  EXPECT_EQ(collapse_challenge(4, 3, 4), 4u);
  EXPECT_EQ(collapse_challenge(4, 3, 6), 5u);
  EXPECT_EQ(collapse_challenge(4, 3, 7), 5u);
  EXPECT_THROW(collapse_challenge(4, 3, 0), Error);
  EXPECT_THROW(collapse_challenge(4, 3, 8), Error);
}

TEST(ChallengeDraw, InstanceChallengeFrequency) {
  // m = 4, n = 3: the instance challenge shows up with probability 3/7.
  Rng rng(2026);
  int hits = 0;
  const int kDraws = 20000;
  for (int i = 0; i < kDraws; ++i) {
    uint32_t r_prime = 1 + static_cast<uint32_t>(rng.below(7));
    if (collapse_challenge(4, 3, r_prime) == 5) {
      ++hits;
    }
  }
  EXPECT_NEAR(hits / static_cast<double>(kDraws), 3.0 / 7.0, kTolStat);
}

TEST(ChallengeDraw, NoInstanceChallengeWithoutInstanceWires) {
  Hamiltonian h =
      reduce_circuit(fixtures::toy_no_instance(), Frame::kDressed);
  Rng rng(7);
  for (int i = 0; i < 100; ++i) {
    Challenge ch = sample_challenge(h, {}, rng);
    EXPECT_EQ(ch.kind, Challenge::Kind::kTerm);
  }
}

TEST(ChallengeShapes, ToyFamily) {
  Hamiltonian h = reduce_circuit(fixtures::toy_accepting(), Frame::kDressed);
  ASSERT_EQ(h.num_terms(), 3u);

  Challenge in = make_term_challenge(h, 1);
  EXPECT_EQ(in.word.blocks, (std::vector<uint32_t>{0, 3}));
  EXPECT_EQ(in.zero_locals, (std::vector<uint32_t>{0, 1}));

  Challenge prop = make_term_challenge(h, 3);
  EXPECT_EQ(prop.word.blocks, (std::vector<uint32_t>{0, 2, 3}));
  EXPECT_EQ(prop.zero_locals, (std::vector<uint32_t>{0}));

  Challenge inst = make_instance_challenge(h, {1});
  EXPECT_EQ(inst.r, 4u);
  EXPECT_EQ(inst.word.blocks, (std::vector<uint32_t>{0, 1}));
  EXPECT_TRUE(inst.word.op.word.empty());

  EXPECT_THROW(make_term_challenge(h, 0), Error);
  EXPECT_THROW(make_term_challenge(h, 4), Error);
  Hamiltonian plain = reduce_circuit(fixtures::toy_accepting(), Frame::kPlain);
  EXPECT_THROW(make_term_challenge(plain, 3), Error);
}

TEST(CorrectionLayout, SplitRoundTrip) {
  Rng rng(11);
  AuthKeys keys = sample_auth_keys(rng, 2, 1);
  BitVec d = sample_d(keys, rng);
  EXPECT_EQ(d.size(), 2 * keys.total_wires());
  EXPECT_EQ(concat(d_x_part(keys, d), d_z_part(keys, d)), d);
  EXPECT_EQ(weight(zero_d(keys)), 0u);
}

// Measures an encoded state under a challenge the way the protocol does:
// fresh corrections fold into the pads before measurement and are reported
// alongside the outcome.
struct MeasuredRun {
  BitVec z;
  BitVec d;
};

MeasuredRun measure_under(const EncodedState& state, const Challenge& ch,
                          Rng& rng) {
  MeasuredRun run;
  run.d = sample_d(state.keys, rng);
  BitVec a = xored(state.keys.a, d_x_part(state.keys, run.d));
  BitVec b = xored(state.keys.b, d_z_part(state.keys, run.d));
  run.z = measure_encoded(state, ch.word, a, b, rng);
  return run;
}

TEST(EvalQ, HonestHistoryPassesEveryChallenge) {
  Rng rng(31337);
  struct Case {
    Circuit circuit;
    BitVec x;
  };
  std::vector<Case> cases = {
      {fixtures::toy_accepting(), {1}},
      {fixtures::chain2(), {1}},
  };
  for (const auto& c : cases) {
    Hamiltonian h = reduce_circuit(c.circuit, Frame::kDressed);
    Vec logical = history_state(h, c.x, basis_state(c.circuit.c_witness, {1}));
    AuthKeys keys = sample_auth_keys(rng, h.num_qubits(), 1);
    EncodedState state = auth_encode(keys, logical);
    std::vector<Challenge> family;
    for (uint32_t r = 1; r <= h.num_terms(); ++r) {
      family.push_back(make_term_challenge(h, r));
    }
    family.push_back(make_instance_challenge(h, c.x));
    for (const Challenge& ch : family) {
      for (int trial = 0; trial < 10; ++trial) {
        MeasuredRun run = measure_under(state, ch, rng);
        PredicateResult res = eval_Q(keys, ch, run.z, run.d);
        EXPECT_TRUE(res.valid) << "challenge " << ch.r;
        EXPECT_TRUE(res.accept) << "challenge " << ch.r;
      }
    }
  }
}

TEST(EvalQ, WitnesslessStateMatchesTermExpectations) {
  // The all-zeros state: the input and output checks still pass, the
  // propagation check passes half the time, the instance check never does.
  Hamiltonian h = reduce_circuit(fixtures::toy_accepting(), Frame::kDressed);
  Rng rng(404);
  AuthKeys keys = sample_auth_keys(rng, h.num_qubits(), 1);
  EncodedState state = auth_encode(keys, ket0n(h.num_qubits()));

  auto rate = [&](const Challenge& ch, int trials) {
    int ok = 0;
    for (int i = 0; i < trials; ++i) {
      MeasuredRun run = measure_under(state, ch, rng);
      PredicateResult res = eval_Q(keys, ch, run.z, run.d);
      EXPECT_TRUE(res.valid);
      ok += res.accept ? 1 : 0;
    }
    return ok / static_cast<double>(trials);
  };

  EXPECT_EQ(rate(make_term_challenge(h, 1), 25), 1.0);
  EXPECT_EQ(rate(make_term_challenge(h, 2), 25), 1.0);
  EXPECT_NEAR(rate(make_term_challenge(h, 3), 400), 0.5, 0.1);
  EXPECT_EQ(rate(make_instance_challenge(h, {1}), 25), 0.0);
}

TEST(EvalQ, QtildeEqualsZeroCorrections) {
  Hamiltonian h = reduce_circuit(fixtures::chain2(), Frame::kDressed);
  Rng rng(55);
  AuthKeys keys = sample_auth_keys(rng, h.num_qubits(), 1);
  EncodedState state = auth_encode(keys, history_state(h, {1}, basis_state(1, {1})));
  for (uint32_t r = 1; r <= h.num_terms(); ++r) {
    Challenge ch = make_term_challenge(h, r);
    for (int i = 0; i < 5; ++i) {
      BitVec z = measure_encoded(state, ch.word, keys.a, keys.b, rng);
      PredicateResult via_q = eval_Q(keys, ch, z, zero_d(keys));
      PredicateResult direct = eval_Qtilde(keys, ch, z);
      EXPECT_EQ(via_q.valid, direct.valid);
      EXPECT_EQ(via_q.accept, direct.accept);
      EXPECT_EQ(via_q.decoded, direct.decoded);
      EXPECT_TRUE(direct.pass());
    }
  }
}

TEST(EvalQ, SingleWireTamperBreaksCodeMembership) {
  Hamiltonian h = reduce_circuit(fixtures::toy_accepting(), Frame::kDressed);
  Rng rng(90210);
  AuthKeys keys = sample_auth_keys(rng, h.num_qubits(), 1);
  EncodedState state = auth_encode(keys, history_state(h, {1}, basis_state(1, {1})));
  Challenge ch = make_term_challenge(h, 1);
  for (int i = 0; i < 10; ++i) {
    MeasuredRun run = measure_under(state, ch, rng);
    ASSERT_TRUE(eval_Q(keys, ch, run.z, run.d).pass());
    // Flipping one claimed correction on a code wire knocks the decoded
    // half out of the codeword set (minimum distance 3).
    BitVec bad = run.d;
    bad[keys.pi[0]] ^= 1;  // block 0, source 0 lands on wire pi[0]
    EXPECT_FALSE(eval_Q(keys, ch, run.z, bad).valid);
  }
}

TEST(EvalQ, GlobalFlipIsCaughtByTraps) {
  // Flipping every X correction maps each code half onto the opposite
  // codeword set (the all-ones word is a codeword), so membership survives;
  // only the trap wires expose the tamper.
  Hamiltonian h = reduce_circuit(fixtures::toy_accepting(), Frame::kDressed);
  Rng rng(606);
  AuthKeys keys = sample_auth_keys(rng, h.num_qubits(), 1);
  EncodedState state = auth_encode(keys, history_state(h, {1}, basis_state(1, {1})));
  Challenge ch = make_term_challenge(h, 2);
  int caught = 0;
  const int kTrials = 20;
  for (int i = 0; i < kTrials; ++i) {
    MeasuredRun run = measure_under(state, ch, rng);
    BitVec bad = run.d;
    for (uint32_t w = 0; w < keys.total_wires(); ++w) {
      bad[w] ^= 1;
    }
    PredicateResult res = eval_Q(keys, ch, run.z, bad);
    // Every block still decodes, so any rejection here is the traps' doing.
    caught += res.valid ? 0 : 1;
  }
  EXPECT_EQ(caught, kTrials);
}

TEST(EvalQ, InstanceChallengeWithoutInstanceWires) {
  Hamiltonian h =
      reduce_circuit(fixtures::toy_no_instance(), Frame::kDressed);
  Rng rng(8);
  AuthKeys keys = sample_auth_keys(rng, h.num_qubits(), 1);
  EncodedState state = auth_encode(keys, ket0n(h.num_qubits()));
  Challenge ch = make_instance_challenge(h, {});
  MeasuredRun run = measure_under(state, ch, rng);
  PredicateResult res = eval_Q(keys, ch, run.z, run.d);
  EXPECT_TRUE(res.valid);
  EXPECT_TRUE(res.accept);  // vacuous instance match
}

}  // namespace
}  // namespace qnizk
