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

// Dense reference implementations used only by tests. These build the full
// physical wire state and measure it directly, so they share no code with
// the factorized samplers they check.

#include "qnizk/authcode.hpp"

namespace qnizk {
namespace oracles {

// Physical encoder built from the raw codeword sets.
inline Mat reference_encoder() {
  Mat e = Mat::Zero(128, 2);
  for (uint8_t b = 0; b < 2; ++b) {
    auto set = steane_set(1, b);
    for (const auto& w : set) {
      e(bits_to_uint(w), b) = 1.0 / std::sqrt(8.0);
    }
  }
  return e;
}

// Builds the padded, permuted, fully physical 14-wire state for one logical
// block at level 1 and returns the exact outcome distribution of measuring
// every wire after the transversal word.
inline std::vector<double> physical_outcome_distribution(
    const AuthKeys& keys, const Vec& logical, const CliffordOp& word) {
  require(keys.n_logical == 1 && keys.level == 1,
          "physical oracle: one block at level 1 only");
  uint32_t W = keys.wires_per_block();  // 14

  // Code half tensor trap half, sources in order.
  Vec psi = Vec(reference_encoder() * logical);
  for (uint32_t pos = 0; pos < keys.block_len(); ++pos) {
    psi = kron(psi, trap_state(keys.trap_at(0, pos)));
  }

  // Route source s to wire pi(s).
  Vec permuted = Vec::Zero(psi.size());
  for (size_t idx = 0; idx < static_cast<size_t>(psi.size()); ++idx) {
    size_t out = 0;
    for (uint32_t s = 0; s < W; ++s) {
      if (index_bit(idx, W, s)) {
        out |= qubit_mask(W, keys.pi[s]);
      }
    }
    permuted[out] = psi[idx];
  }

  // One-time pads.
  PauliString pads = PauliString::identity(W);
  pads.x = keys.a;
  pads.z = keys.b;
  Vec padded = apply_pauli(permuted, pads);

  // Transversal word: every wire of the block receives each letter.
  for (const auto& g : word.word) {
    require(!gate_is_two_qubit(g.g), "physical oracle: single-block words");
    for (uint32_t wire = 0; wire < W; ++wire) {
      padded = apply_op(padded, gate_matrix(g.g), {wire}, W);
    }
  }

  std::vector<uint32_t> all(W);
  for (uint32_t i = 0; i < W; ++i) {
    all[i] = i;
  }
  return outcome_probabilities(padded, all, W);
}

}  // namespace oracles
}  // namespace qnizk
