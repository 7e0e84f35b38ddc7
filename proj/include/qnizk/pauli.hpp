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

#include <string>

#include "qnizk/states.hpp"

namespace qnizk {

// P = i^s * prod_q X_q^{x_q} Z_q^{z_q}, factors ordered by ascending qubit
// index, X before Z within each qubit. Every phase below is exact in this
// encoding; in particular Y_q = i * X_q Z_q carries s = 1.
struct PauliString {
  uint32_t n = 0;
  BitVec x;
  BitVec z;
  uint8_t s = 0;  // phase exponent mod 4

  static PauliString identity(uint32_t n) {
    PauliString p;
    p.n = n;
    p.x.assign(n, 0);
    p.z.assign(n, 0);
    p.s = 0;
    return p;
  }

  // Letters I, X, Y, Z; `phase` is the printed phase exponent, so the stored
  // s absorbs one factor of i per Y.
  static PauliString from_label(std::string_view label, uint8_t phase = 0) {
    PauliString p = identity(static_cast<uint32_t>(label.size()));
    uint32_t ys = 0;
    for (uint32_t q = 0; q < p.n; ++q) {
      switch (label[q]) {
        case 'I':
          break;
        case 'X':
          p.x[q] = 1;
          break;
        case 'Y':
          p.x[q] = 1;
          p.z[q] = 1;
          ++ys;
          break;
        case 'Z':
          p.z[q] = 1;
          break;
        default:
          fail("PauliString::from_label: invalid letter");
      }
    }
    p.s = static_cast<uint8_t>((phase + ys) & 3);
    return p;
  }

  bool is_identity_mask() const {
    return weight(x) == 0 && weight(z) == 0;
  }

  bool operator==(const PauliString& o) const {
    return n == o.n && x == o.x && z == o.z && s == o.s;
  }

  // Printed form: phase exponent with Y letters normalized out.
  std::pair<uint8_t, std::string> to_label() const {
    std::string out(n, 'I');
    uint32_t ys = 0;
    for (uint32_t q = 0; q < n; ++q) {
      if (x[q] && z[q]) {
        out[q] = 'Y';
        ++ys;
      } else if (x[q]) {
        out[q] = 'X';
      } else if (z[q]) {
        out[q] = 'Z';
      }
    }
    uint8_t phase = static_cast<uint8_t>((s + 4 - (ys & 3)) & 3);
    return {phase, out};
  }
};

// Z^{z1} X^{x2} = (-1)^{<z1,x2>} X^{x2} Z^{z1}, hence the 2<z1,x2> phase.
inline PauliString operator*(const PauliString& a, const PauliString& b) {
  require(a.n == b.n, "PauliString product: width mismatch");
  PauliString r = PauliString::identity(a.n);
  uint32_t cross = 0;
  for (uint32_t q = 0; q < a.n; ++q) {
    cross += a.z[q] & b.x[q];
    r.x[q] = a.x[q] ^ b.x[q];
    r.z[q] = a.z[q] ^ b.z[q];
  }
  r.s = static_cast<uint8_t>((a.s + b.s + 2 * cross) & 3);
  return r;
}

inline bool commutes(const PauliString& a, const PauliString& b) {
  require(a.n == b.n, "commutes: width mismatch");
  uint32_t acc = 0;
  for (uint32_t q = 0; q < a.n; ++q) {
    acc += (a.x[q] & b.z[q]) ^ (a.z[q] & b.x[q]);
  }
  return (acc & 1) == 0;
}

inline cx phase_value(uint8_t s) {
  static const cx table[4] = {cx(1, 0), cx(0, 1), cx(-1, 0), cx(0, -1)};
  return table[s & 3];
}

inline Mat pauli_matrix(const PauliString& p) {
  Mat out = Mat::Identity(1, 1) * phase_value(p.s);
  for (uint32_t q = 0; q < p.n; ++q) {
    Mat f = Mat::Identity(2, 2);
    if (p.x[q]) {
      f = f * gate_X();
    }
    if (p.z[q]) {
      f = f * gate_Z();
    }
    out = kron(out, f);
  }
  return out;
}

// P|b> = i^s (-1)^{<z,b>} |b xor x>.
inline Vec apply_pauli(const Vec& psi, const PauliString& p) {
  size_t N = dim(p.n);
  require(static_cast<size_t>(psi.size()) == N, "apply_pauli: size mismatch");
  size_t xmask = 0;
  size_t zmask = 0;
  for (uint32_t q = 0; q < p.n; ++q) {
    if (p.x[q]) {
      xmask |= qubit_mask(p.n, q);
    }
    if (p.z[q]) {
      zmask |= qubit_mask(p.n, q);
    }
  }
  cx ph = phase_value(p.s);
  Vec out(N);
  for (size_t b = 0; b < N; ++b) {
    int sgn = __builtin_popcountll(b & zmask) & 1 ? -1 : 1;
    out[b ^ xmask] = ph * static_cast<double>(sgn) * psi[b];
  }
  return out;
}

}  // namespace qnizk
