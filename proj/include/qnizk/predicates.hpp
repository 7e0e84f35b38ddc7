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

#include "qnizk/authcode.hpp"
#include "qnizk/hamiltonian.hpp"

namespace qnizk {

// A challenge fixes the transversal measurement word and the acceptance
// condition on the decoded logical bits. Challenges 1..m follow the energy
// terms; challenge m+1 checks the instance register at time zero.
struct Challenge {
  enum class Kind : uint8_t { kTerm, kInstance };
  Kind kind = Kind::kTerm;
  uint32_t r = 0;  // 1-based index into the family
  LogicalWord word;
  std::vector<uint32_t> zero_locals;  // term kind: rotated wires expecting 0
  BitVec x;                           // instance kind
};

inline Challenge make_term_challenge(const Hamiltonian& h, uint32_t r) {
  require(r >= 1 && r <= h.num_terms(), "make_term_challenge: index");
  const Term& t = h.terms[r - 1];
  require(t.word.has_value(),
          "make_term_challenge: term lacks a Clifford word; build the "
          "Hamiltonian in the dressed frame");
  Challenge c;
  c.kind = Challenge::Kind::kTerm;
  c.r = r;
  c.word.op = *t.word;
  c.word.blocks = t.qubits;
  c.zero_locals = t.proj;
  return c;
}

inline Challenge make_instance_challenge(const Hamiltonian& h,
                                         const BitVec& x) {
  require(x.size() == h.circuit.n_instance,
          "make_instance_challenge: instance width");
  Challenge c;
  c.kind = Challenge::Kind::kInstance;
  c.r = h.num_terms() + 1;
  c.word.blocks.push_back(h.clock_qubit(1));
  for (uint32_t i = 0; i < h.circuit.n_instance; ++i) {
    c.word.blocks.push_back(h.data_qubit(i));
  }
  c.word.op = CliffordOp::identity(
      static_cast<uint32_t>(c.word.blocks.size()));
  c.x = x;
  return c;
}

// Challenge draw: r' is uniform over [1, m+n]; everything past m collapses
// onto the instance challenge, so it appears with probability n / (m+n).
inline uint32_t collapse_challenge(uint32_t m, uint32_t n, uint32_t r_prime) {
  require(r_prime >= 1 && r_prime <= m + n, "collapse_challenge: range");
  return r_prime <= m ? r_prime : m + 1;
}

inline Challenge sample_challenge(const Hamiltonian& h, const BitVec& x,
                                  Rng& rng) {
  uint32_t m = h.num_terms();
  uint32_t n = h.circuit.n_instance;
  uint32_t r_prime = 1 + static_cast<uint32_t>(rng.below(m + n));
  uint32_t r = collapse_challenge(m, n, r_prime);
  return r <= m ? make_term_challenge(h, r) : make_instance_challenge(h, x);
}

struct PredicateResult {
  bool valid = false;   // code halves decode and traps are consistent
  bool accept = false;  // the challenge condition on the decoded bits
  BitVec decoded;       // one logical bit per block, 0 where undecodable

  bool pass() const { return valid && accept; }
};

// Probability floor below which an observed trap pattern is treated as
// impossible (squared amplitude threshold).
inline constexpr double kTrapTol = 1e-18;

// Evaluates a challenge on the measured wire string, given the total pads
// in effect (authentication pads already combined with any teleportation
// corrections). Validity spans every block: all code halves must lie in
// their codeword sets and every trap outcome must have nonzero amplitude,
// with untouched blocks read through the identity.
inline PredicateResult eval_challenge(const AuthKeys& keys,
                                      const Challenge& ch, const BitVec& z,
                                      const BitVec& pad_a,
                                      const BitVec& pad_b) {
  keys.validate();
  DecodedWires wires = unmask_wires(keys, ch.word, z, pad_a, pad_b);
  uint32_t p = keys.n_logical;
  uint32_t N = keys.block_len();

  PredicateResult res;
  res.decoded.assign(p, 0);
  res.valid = true;
  for (uint32_t bl = 0; bl < p; ++bl) {
    auto m = steane_member(keys.level, wires.code[bl]);
    if (!m) {
      res.valid = false;
    } else {
      res.decoded[bl] = *m;
    }
  }

  std::vector<int32_t> touched(p, -1);
  for (uint32_t i = 0; i < ch.word.blocks.size(); ++i) {
    touched[ch.word.blocks[i]] = static_cast<int32_t>(i);
  }
  for (uint32_t pos = 0; pos < N && res.valid; ++pos) {
    // Touched blocks: joint outcome must have support under the word.
    std::vector<double> joint =
        detail::trap_position_distribution(keys, ch.word, pos);
    size_t observed = 0;
    for (uint32_t i = 0; i < ch.word.blocks.size(); ++i) {
      observed = (observed << 1) | wires.trap[ch.word.blocks[i]][pos];
    }
    if (joint[observed] < kTrapTol) {
      res.valid = false;
      break;
    }
    // Untouched blocks: identity measurement pins the zero traps.
    for (uint32_t bl = 0; bl < p; ++bl) {
      if (touched[bl] >= 0) {
        continue;
      }
      if (keys.trap_at(bl, pos) == Trap::kZero && wires.trap[bl][pos] != 0) {
        res.valid = false;
        break;
      }
    }
  }
  if (!res.valid) {
    return res;
  }

  if (ch.kind == Challenge::Kind::kTerm) {
    // The rotated term rejects exactly on the all-zeros outcome of its
    // projected wires.
    bool all_zero = true;
    for (uint32_t loc : ch.zero_locals) {
      if (res.decoded[ch.word.blocks[loc]]) {
        all_zero = false;
      }
    }
    res.accept = !all_zero;
  } else {
    uint8_t clock_started = res.decoded[ch.word.blocks[0]];
    bool instance_matches = true;
    for (uint32_t i = 0; i < ch.x.size(); ++i) {
      if (res.decoded[ch.word.blocks[1 + i]] != ch.x[i]) {
        instance_matches = false;
      }
    }
    res.accept = clock_started || instance_matches;
  }
  return res;
}

// Teleportation corrections, laid out as d = d_x || d_z over the wires.
inline BitVec sample_d(const AuthKeys& keys, Rng& rng) {
  return rng.bits(2 * keys.total_wires());
}

inline BitVec zero_d(const AuthKeys& keys) {
  return BitVec(2 * keys.total_wires(), 0);
}

inline BitVec d_x_part(const AuthKeys& keys, const BitVec& d) {
  require(d.size() == 2 * keys.total_wires(), "d length");
  return slice(d, 0, keys.total_wires());
}

inline BitVec d_z_part(const AuthKeys& keys, const BitVec& d) {
  require(d.size() == 2 * keys.total_wires(), "d length");
  return slice(d, keys.total_wires(), keys.total_wires());
}

// Full acceptance predicate: combines the pads with the claimed corrections
// and evaluates the challenge.
inline PredicateResult eval_Q(const AuthKeys& keys, const Challenge& ch,
                              const BitVec& z, const BitVec& d) {
  BitVec a = xored(keys.a, d_x_part(keys, d));
  BitVec b = xored(keys.b, d_z_part(keys, d));
  return eval_challenge(keys, ch, z, a, b);
}

// Correction-free predicate, used where the state is handed over directly
// rather than teleported. Coincides with eval_Q at d = 0.
inline PredicateResult eval_Qtilde(const AuthKeys& keys, const Challenge& ch,
                                   const BitVec& z) {
  return eval_Q(keys, ch, z, zero_d(keys));
}

}  // namespace qnizk
