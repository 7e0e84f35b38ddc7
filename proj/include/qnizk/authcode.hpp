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

#include "json.hpp"
#include "qnizk/steane.hpp"

namespace qnizk {

// Trap wires are bare qubits in one of three single-qubit states.
enum class Trap : uint8_t { kZero, kPlus, kPlusY };

inline Vec trap_state(Trap t) {
  switch (t) {
    case Trap::kZero:
      return basis_state(1, {0});
    case Trap::kPlus:
      return ket_plus();
    case Trap::kPlusY:
      return ket_plus_y();
  }
  fail("trap_state: bad trap");
}

inline const char* trap_name(Trap t) {
  switch (t) {
    case Trap::kZero:
      return "0";
    case Trap::kPlus:
      return "+";
    case Trap::kPlusY:
      return "+y";
  }
  return "?";
}

inline Trap trap_from_name(std::string_view s) {
  if (s == "0") return Trap::kZero;
  if (s == "+") return Trap::kPlus;
  if (s == "+y") return Trap::kPlusY;
  fail("trap_from_name: bad trap " + std::string(s));
}

// Authentication keys for p logical qubits at concatenation level t. Each
// logical qubit becomes one block of 2N wires, N = 7^t: the code half, then
// N trap wires, interleaved by the shared in-block permutation pi and masked
// by the one-time Pauli pads.
//
// Wire layout, per block, before permuting: sources [0, N) are the code
// wires, [N, 2N) the trap wires. Wire pi(s) of the block carries source s.
// Pads are indexed by output wire, globally: block i owns wires
// [i*2N, (i+1)*2N).
struct AuthKeys {
  uint32_t level = 1;
  uint32_t n_logical = 0;
  std::vector<Trap> traps;   // n_logical * N, row-major (block, position)
  std::vector<uint32_t> pi;  // permutation of [0, 2N)
  BitVec a;                  // X pads, n_logical * 2N
  BitVec b;                  // Z pads, n_logical * 2N

  uint32_t block_len() const { return static_cast<uint32_t>(pow7(level)); }
  uint32_t wires_per_block() const { return 2 * block_len(); }
  uint32_t total_wires() const { return n_logical * wires_per_block(); }

  Trap trap_at(uint32_t block, uint32_t pos) const {
    return traps[block * block_len() + pos];
  }

  void validate() const {
    require(level >= 1, "AuthKeys: level");
    require(n_logical >= 1, "AuthKeys: no blocks");
    require(traps.size() == static_cast<size_t>(n_logical) * block_len(),
            "AuthKeys: trap table size");
    require(pi.size() == wires_per_block(), "AuthKeys: permutation size");
    std::vector<bool> seen(pi.size(), false);
    for (uint32_t v : pi) {
      require(v < pi.size() && !seen[v], "AuthKeys: not a permutation");
      seen[v] = true;
    }
    require(a.size() == total_wires() && b.size() == total_wires(),
            "AuthKeys: pad size");
  }
};

inline AuthKeys sample_auth_keys(Rng& rng, uint32_t n_logical,
                                 uint32_t level) {
  AuthKeys k;
  k.level = level;
  k.n_logical = n_logical;
  uint32_t N = k.block_len();
  for (uint32_t i = 0; i < n_logical * N; ++i) {
    k.traps.push_back(static_cast<Trap>(rng.below(3)));
  }
  k.pi = rng.permutation(2 * N);
  k.a = rng.bits(k.total_wires());
  k.b = rng.bits(k.total_wires());
  return k;
}

inline nlohmann::json auth_keys_to_json(const AuthKeys& k) {
  nlohmann::json j;
  j["level"] = k.level;
  j["n_logical"] = k.n_logical;
  nlohmann::json traps = nlohmann::json::array();
  for (Trap t : k.traps) {
    traps.push_back(trap_name(t));
  }
  j["traps"] = traps;
  j["pi"] = k.pi;
  j["a"] = to_hex(k.a);
  j["b"] = to_hex(k.b);
  return j;
}

inline AuthKeys auth_keys_from_json(const nlohmann::json& j) {
  AuthKeys k;
  try {
    k.level = j.at("level").get<uint32_t>();
    k.n_logical = j.at("n_logical").get<uint32_t>();
    for (const auto& t : j.at("traps")) {
      k.traps.push_back(trap_from_name(t.get<std::string>()));
    }
    k.pi = j.at("pi").get<std::vector<uint32_t>>();
    k.a = from_hex(j.at("a").get<std::string>(), k.total_wires());
    k.b = from_hex(j.at("b").get<std::string>(), k.total_wires());
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("AuthKeys: malformed JSON: ") + e.what());
  }
  k.validate();
  return k;
}

// An authenticated state, tracked symbolically: the logical payload plus the
// keys that would dress it. All sampling honors the exact physical
// distributions without ever materializing the 2N * p wires.
struct EncodedState {
  AuthKeys keys;
  Vec logical;  // over n_logical qubits

  void validate() const {
    keys.validate();
    require(static_cast<size_t>(logical.size()) == dim(keys.n_logical),
            "EncodedState: logical dimension");
  }
};

inline EncodedState auth_encode(const AuthKeys& keys, const Vec& logical) {
  EncodedState s{keys, logical};
  s.validate();
  return s;
}

// A measurement word lifted to logical blocks: `op` acts on the listed
// blocks (ascending), transversally on the wire level.
struct LogicalWord {
  CliffordOp op;               // width = blocks.size()
  std::vector<uint32_t> blocks;

  static LogicalWord identity_on(uint32_t block) {
    LogicalWord w;
    w.op = CliffordOp::identity(1);
    w.blocks = {block};
    return w;
  }
};

// Pushes Pauli pads through the transversal measurement word: for every
// letter, each wire position applies the letter to the matching wire of the
// letter's block(s). Phases are irrelevant here; only the pad masks move.
inline void pad_pushthrough(const AuthKeys& keys, const LogicalWord& word,
                            BitVec& a, BitVec& b) {
  require(a.size() == keys.total_wires() && b.size() == keys.total_wires(),
          "pad_pushthrough: pad size");
  uint32_t W = keys.wires_per_block();
  auto wire = [&](uint32_t local_block, uint32_t w) {
    return word.blocks[local_block] * W + w;
  };
  for (const auto& g : word.op.word) {
    for (uint32_t w = 0; w < W; ++w) {
      uint32_t qa = wire(g.a, w);
      switch (g.g) {
        case G::X:
        case G::Y:
        case G::Z:
          break;  // pads commute up to phase
        case G::H:
          std::swap(a[qa], b[qa]);
          break;
        case G::S:
        case G::Sdg:
          b[qa] ^= a[qa];
          break;
        case G::CNOT: {
          uint32_t qb = wire(g.b, w);
          a[qb] ^= a[qa];
          b[qa] ^= b[qb];
          break;
        }
        case G::CZ: {
          uint32_t qb = wire(g.b, w);
          b[qb] ^= a[qa];
          b[qa] ^= a[qb];
          break;
        }
      }
    }
  }
}

namespace detail {

// Exact joint outcome distribution of the trap wires at one position across
// the touched blocks, under the physical letters of the word.
inline std::vector<double> trap_position_distribution(
    const AuthKeys& keys, const LogicalWord& word, uint32_t pos) {
  uint32_t k = static_cast<uint32_t>(word.blocks.size());
  Vec joint = Vec::Ones(1);
  for (uint32_t i = 0; i < k; ++i) {
    joint = kron(joint, trap_state(keys.trap_at(word.blocks[i], pos)));
  }
  Vec out = word.op.apply(joint);
  std::vector<uint32_t> all(k);
  for (uint32_t i = 0; i < k; ++i) {
    all[i] = i;
  }
  return outcome_probabilities(out, all, k);
}

}  // namespace detail

// Computational measurement of every wire, after applying the transversal
// measurement word, with the given total pads in place (auth pads already
// combined with any teleportation corrections by the caller). Exactness of
// the factorized sampling:
//   * the logical outcome follows the logical action of the word;
//   * conditioned on it, each code half is uniform over its codeword set,
//     because the transversal alphabet maps the sets onto each other
//     position-wise and coset-wise;
//   * trap wires interact only with the same position in other blocks;
//   * pads flip computational outcomes by their pushed-through X part.
inline BitVec measure_encoded(const EncodedState& state,
                              const LogicalWord& word, const BitVec& pad_a,
                              const BitVec& pad_b, Rng& rng) {
  state.validate();
  const AuthKeys& keys = state.keys;
  uint32_t N = keys.block_len();
  uint32_t W = keys.wires_per_block();
  uint32_t p = keys.n_logical;
  require(word.op.n == word.blocks.size(), "measure_encoded: word width");
  for (uint32_t bl : word.blocks) {
    require(bl < p, "measure_encoded: block out of range");
  }

  // Pushed pads; the X part flips measured bits.
  BitVec a = pad_a, b = pad_b;
  pad_pushthrough(keys, word, a, b);

  // Logical outcome over every block.
  CliffordOp logical = logical_word_at_level(word.op, keys.level);
  Vec rotated = state.logical;
  if (!word.blocks.empty()) {
    rotated = apply_op(rotated, logical.dense(), word.blocks, p);
  }
  std::vector<uint32_t> all_blocks(p);
  for (uint32_t i = 0; i < p; ++i) {
    all_blocks[i] = i;
  }
  auto probs = outcome_probabilities(rotated, all_blocks, p);
  BitVec w = uint_to_bits(sample_index(probs, rng), p);

  // Per-block wires.
  BitVec z(keys.total_wires());
  std::vector<int32_t> touched(p, -1);
  for (uint32_t i = 0; i < word.blocks.size(); ++i) {
    touched[word.blocks[i]] = static_cast<int32_t>(i);
  }
  // Trap outcomes for touched blocks, sampled jointly per position.
  std::vector<BitVec> trap_bits(p, BitVec(N));
  for (uint32_t pos = 0; pos < N; ++pos) {
    std::vector<double> joint =
        detail::trap_position_distribution(keys, word, pos);
    BitVec bits = uint_to_bits(sample_index(joint, rng),
                               static_cast<uint32_t>(word.blocks.size()));
    for (uint32_t i = 0; i < word.blocks.size(); ++i) {
      trap_bits[word.blocks[i]][pos] = bits[i];
    }
  }
  for (uint32_t bl = 0; bl < p; ++bl) {
    if (touched[bl] >= 0) {
      continue;
    }
    for (uint32_t pos = 0; pos < N; ++pos) {
      switch (keys.trap_at(bl, pos)) {
        case Trap::kZero:
          trap_bits[bl][pos] = 0;
          break;
        case Trap::kPlus:
        case Trap::kPlusY:
          trap_bits[bl][pos] = rng.bit();
          break;
      }
    }
  }
  for (uint32_t bl = 0; bl < p; ++bl) {
    BitVec code = steane_sample_word(keys.level, w[bl], rng);
    BitVec source = concat(code, trap_bits[bl]);
    for (uint32_t s = 0; s < W; ++s) {
      uint32_t out_wire = bl * W + keys.pi[s];
      z[out_wire] = source[s] ^ a[out_wire];
    }
  }
  return z;
}

// Exact outcome distribution of measure_encoded for a single block, built
// from the same factorization the sampler uses: logical outcome, uniform
// codeword, per-position trap amplitudes, permutation, pushed pads.
inline std::vector<double> encoded_outcome_distribution(
    const EncodedState& state, const LogicalWord& word, const BitVec& pad_a,
    const BitVec& pad_b) {
  state.validate();
  const AuthKeys& keys = state.keys;
  require(keys.n_logical == 1 && keys.level == 1,
          "encoded_outcome_distribution: one block at level 1");
  uint32_t N = keys.block_len();
  uint32_t W = keys.wires_per_block();

  BitVec a = pad_a, b = pad_b;
  pad_pushthrough(keys, word, a, b);

  CliffordOp logical = logical_word_at_level(word.op, keys.level);
  Vec rotated = state.logical;
  if (!word.blocks.empty()) {
    rotated = apply_op(rotated, logical.dense(), word.blocks, 1);
  }
  auto w_probs = outcome_probabilities(rotated, {0}, 1);

  std::vector<std::vector<double>> trap_probs(N);
  for (uint32_t pos = 0; pos < N; ++pos) {
    if (!word.blocks.empty()) {
      trap_probs[pos] = detail::trap_position_distribution(keys, word, pos);
    } else {
      Trap t = keys.trap_at(0, pos);
      trap_probs[pos] = t == Trap::kZero ? std::vector<double>{1.0, 0.0}
                                         : std::vector<double>{0.5, 0.5};
    }
  }

  std::vector<double> dist(dim(W), 0.0);
  for (uint8_t wbit = 0; wbit < 2; ++wbit) {
    if (w_probs[wbit] < 1e-300) {
      continue;
    }
    auto codes = steane_set(keys.level, wbit);
    double p_code = 1.0 / static_cast<double>(codes.size());
    for (const auto& code : codes) {
      for (size_t q = 0; q < dim(N); ++q) {
        BitVec qb = uint_to_bits(q, N);
        double pq = 1.0;
        for (uint32_t pos = 0; pos < N; ++pos) {
          pq *= trap_probs[pos][qb[pos]];
        }
        if (pq < 1e-300) {
          continue;
        }
        BitVec source = concat(code, qb);
        size_t z = 0;
        for (uint32_t s = 0; s < W; ++s) {
          uint32_t out_wire = keys.pi[s];
          if (source[s] ^ a[out_wire]) {
            z |= qubit_mask(W, out_wire);
          }
        }
        dist[z] += w_probs[wbit] * p_code * pq;
      }
    }
  }
  return dist;
}

// Inverse bookkeeping for predicate evaluation: strips the pushed X pads and
// the permutation from a measured string, returning per-block (code, trap)
// source bits.
struct DecodedWires {
  std::vector<BitVec> code;  // per block, length N
  std::vector<BitVec> trap;  // per block, length N
};

inline DecodedWires unmask_wires(const AuthKeys& keys, const LogicalWord& word,
                                 const BitVec& z, const BitVec& pad_a,
                                 const BitVec& pad_b) {
  require(z.size() == keys.total_wires(), "unmask_wires: length");
  BitVec a = pad_a, b = pad_b;
  pad_pushthrough(keys, word, a, b);
  uint32_t N = keys.block_len();
  uint32_t W = keys.wires_per_block();
  DecodedWires out;
  out.code.resize(keys.n_logical);
  out.trap.resize(keys.n_logical);
  for (uint32_t bl = 0; bl < keys.n_logical; ++bl) {
    BitVec source(W);
    for (uint32_t s = 0; s < W; ++s) {
      uint32_t out_wire = bl * W + keys.pi[s];
      source[s] = z[out_wire] ^ a[out_wire];
    }
    out.code[bl] = slice(source, 0, N);
    out.trap[bl] = slice(source, N, N);
  }
  return out;
}

}  // namespace qnizk
