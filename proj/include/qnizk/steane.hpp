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

#include <optional>

#include "qnizk/clifford.hpp"

namespace qnizk {

// The [7,4] Hamming code, its even-weight subcode (the dual, doubly even),
// and the odd coset. Position 0 is the leftmost bit.
struct SteaneTables {
  std::vector<BitVec> code;  // 16 words
  std::vector<BitVec> even;  // 8 words, contains 0^7
  std::vector<BitVec> odd;   // 8 words, contains 1^7
  std::array<uint8_t, 3> check_masks{{0b0001111, 0b0110011, 0b1010101}};

  static const SteaneTables& get() {
    static const SteaneTables t = [] {
      SteaneTables t;
      for (uint32_t v = 0; v < 128; ++v) {
        bool ok = true;
        for (uint8_t m : t.check_masks) {
          if (__builtin_popcount(v & m) & 1) {
            ok = false;
            break;
          }
        }
        if (!ok) {
          continue;
        }
        BitVec w = uint_to_bits(v, 7);
        t.code.push_back(w);
        (parity(w) ? t.odd : t.even).push_back(w);
      }
      return t;
    }();
    return t;
  }

  bool in_code(const BitVec& w) const {
    require(w.size() == 7, "in_code: width");
    uint32_t v = static_cast<uint32_t>(bits_to_uint(w));
    for (uint8_t m : check_masks) {
      if (__builtin_popcount(v & m) & 1) {
        return false;
      }
    }
    return true;
  }
};

inline size_t pow7(uint32_t level) {
  size_t r = 1;
  for (uint32_t i = 0; i < level; ++i) {
    r *= 7;
  }
  return r;
}

// Codeword set encoder for the concatenated scheme. The same randomizer tail
// is shared by the seven sub-blocks of each level, so the level-t set for a
// logical bit b has exactly 8^t elements, is closed under xor, and every
// element has parity b.
inline BitVec steane_encode_bits(uint32_t level, uint8_t b,
                                 const std::vector<BitVec>& vs) {
  require(vs.size() == level, "steane_encode_bits: need one v per level");
  const auto& t = SteaneTables::get();
  require(t.in_code(vs[0]) && parity(vs[0]) == 0,
          "steane_encode_bits: v must lie in the even subcode");
  BitVec w(7);
  for (uint32_t i = 0; i < 7; ++i) {
    w[i] = (b & 1) ^ vs[0][i];
  }
  if (level == 1) {
    return w;
  }
  std::vector<BitVec> tail(vs.begin() + 1, vs.end());
  BitVec out;
  out.reserve(pow7(level));
  for (uint32_t i = 0; i < 7; ++i) {
    BitVec block = steane_encode_bits(level - 1, w[i], tail);
    out.insert(out.end(), block.begin(), block.end());
  }
  return out;
}

inline BitVec steane_sample_word(uint32_t level, uint8_t b, Rng& rng) {
  const auto& t = SteaneTables::get();
  std::vector<BitVec> vs;
  for (uint32_t i = 0; i < level; ++i) {
    vs.push_back(t.even[rng.below(8)]);
  }
  return steane_encode_bits(level, b, vs);
}

// Membership test; returns the encoded bit when y lies in one of the two
// level-t sets. Sub-blocks must decode individually, share one residual
// after stripping their parities, and the parity vector must itself be a
// Hamming codeword.
inline std::optional<uint8_t> steane_member(uint32_t level, const BitVec& y) {
  const auto& t = SteaneTables::get();
  if (y.size() != pow7(level)) {
    return std::nullopt;
  }
  if (level == 1) {
    if (!t.in_code(y)) {
      return std::nullopt;
    }
    return parity(y);
  }
  size_t sub = pow7(level - 1);
  BitVec beta(7);
  std::optional<BitVec> residual;
  for (uint32_t i = 0; i < 7; ++i) {
    BitVec block = slice(y, i * sub, sub);
    auto bi = steane_member(level - 1, block);
    if (!bi) {
      return std::nullopt;
    }
    beta[i] = *bi;
    // Strip the parity contribution: subtract Enc(beta_i; zero tail) = beta_i * 1.
    BitVec res = block;
    for (auto& bit : res) {
      bit ^= beta[i];
    }
    if (!residual) {
      residual = res;
    } else if (res != *residual) {
      return std::nullopt;
    }
  }
  if (!t.in_code(beta)) {
    return std::nullopt;
  }
  return parity(beta);
}

// Full enumeration; intended for level <= 2 (8 and 64 elements).
inline std::vector<BitVec> steane_set(uint32_t level, uint8_t b) {
  require(level >= 1 && level <= 2, "steane_set: enumeration is for t <= 2");
  const auto& t = SteaneTables::get();
  std::vector<BitVec> out;
  if (level == 1) {
    for (const auto& v : t.even) {
      out.push_back(steane_encode_bits(1, b, {v}));
    }
    return out;
  }
  for (const auto& v1 : t.even) {
    for (const auto& v2 : t.even) {
      out.push_back(steane_encode_bits(2, b, {v1, v2}));
    }
  }
  return out;
}

// Logical action of a transversal gate letter after `level` rounds of
// encoding: the phase gate flips direction once per level, everything else
// in the alphabet is preserved.
inline G logical_gate_at_level(G g, uint32_t level) {
  if (level % 2 == 0) {
    return g;
  }
  if (g == G::S) {
    return G::Sdg;
  }
  if (g == G::Sdg) {
    return G::S;
  }
  return g;
}

inline CliffordOp logical_word_at_level(const CliffordOp& word,
                                        uint32_t level) {
  CliffordOp out = word;
  for (auto& g : out.word) {
    g.g = logical_gate_at_level(g.g, level);
  }
  return out;
}

// Level-1 quantum pieces. The encoder is the 128 x 2 isometry onto the
// code space; columns are the uniform superpositions over the two sets.
inline const Mat& steane_encoder() {
  static const Mat e = [] {
    Mat e = Mat::Zero(128, 2);
    const auto& t = SteaneTables::get();
    double a = 1.0 / std::sqrt(8.0);
    for (const auto& w : t.even) {
      e(bits_to_uint(w), 0) = a;
    }
    for (const auto& w : t.odd) {
      e(bits_to_uint(w), 1) = a;
    }
    return e;
  }();
  return e;
}

namespace detail {

inline Mat pauli_mask_dense(uint8_t xmask, uint8_t zmask) {
  PauliString p = PauliString::identity(7);
  for (uint32_t q = 0; q < 7; ++q) {
    p.x[q] = (xmask >> (6 - q)) & 1;
    p.z[q] = (zmask >> (6 - q)) & 1;
  }
  return pauli_matrix(p);
}

}  // namespace detail

// Ideal decoder of the level-1 code, as 64 Kraus operators indexed by the
// six syndrome bits: project onto the syndrome sector, undo the matching
// single-qubit error, then invert the encoder. The map is exactly trace
// preserving because each syndrome sector is the image of the code space
// under its correction.
inline const std::vector<Mat>& steane_decoder_kraus() {
  static const std::vector<Mat> kraus = [] {
    const auto& t = SteaneTables::get();
    std::vector<Mat> out;
    const Mat& enc = steane_encoder();
    for (uint32_t sz = 0; sz < 8; ++sz) {      // flags an X error position
      for (uint32_t sx = 0; sx < 8; ++sx) {    // flags a Z error position
        Mat proj = Mat::Identity(128, 128);
        for (uint32_t r = 0; r < 3; ++r) {
          Mat gx = detail::pauli_mask_dense(t.check_masks[r], 0);
          Mat gz = detail::pauli_mask_dense(0, t.check_masks[r]);
          double ex = ((sx >> (2 - r)) & 1) ? -1.0 : 1.0;
          double ez = ((sz >> (2 - r)) & 1) ? -1.0 : 1.0;
          proj = 0.25 * (Mat::Identity(128, 128) + ex * gx) *
                 (Mat::Identity(128, 128) + ez * gz) * proj;
        }
        uint8_t corr_x = 0, corr_z = 0;
        if (sz) {
          corr_x = static_cast<uint8_t>(1u << (6 - (sz - 1)));
        }
        if (sx) {
          corr_z = static_cast<uint8_t>(1u << (6 - (sx - 1)));
        }
        Mat corr = detail::pauli_mask_dense(corr_x, corr_z);
        out.push_back(enc.adjoint() * corr * proj);
      }
    }
    return out;
  }();
  return kraus;
}

// Applies the ideal decoder channel to a 7-qubit density matrix.
inline Mat steane_decode_block(const Mat& rho) {
  require(rho.rows() == 128 && rho.cols() == 128,
          "steane_decode_block: need a 7-qubit density");
  Mat out = Mat::Zero(2, 2);
  for (const Mat& k : steane_decoder_kraus()) {
    out += k * rho * k.adjoint();
  }
  return out;
}

}  // namespace qnizk
