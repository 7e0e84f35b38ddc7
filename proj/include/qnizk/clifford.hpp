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

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qnizk/pauli.hpp"

namespace qnizk {

enum class G : uint8_t { X, Y, Z, H, S, Sdg, CNOT, CZ };

inline bool gate_is_two_qubit(G g) { return g == G::CNOT || g == G::CZ; }

inline const char* gate_name(G g) {
  switch (g) {
    case G::X:
      return "X";
    case G::Y:
      return "Y";
    case G::Z:
      return "Z";
    case G::H:
      return "H";
    case G::S:
      return "S";
    case G::Sdg:
      return "Sdg";
    case G::CNOT:
      return "CNOT";
    case G::CZ:
      return "CZ";
  }
  return "?";
}

inline G gate_from_name(std::string_view s) {
  if (s == "X") return G::X;
  if (s == "Y") return G::Y;
  if (s == "Z") return G::Z;
  if (s == "H") return G::H;
  if (s == "S") return G::S;
  if (s == "Sdg") return G::Sdg;
  if (s == "CNOT") return G::CNOT;
  if (s == "CZ") return G::CZ;
  fail("gate_from_name: unknown gate " + std::string(s));
}

inline const Mat& gate_matrix(G g) {
  switch (g) {
    case G::X:
      return gate_X();
    case G::Y:
      return gate_Y();
    case G::Z:
      return gate_Z();
    case G::H:
      return gate_H();
    case G::S:
      return gate_S();
    case G::Sdg:
      return gate_Sdg();
    case G::CNOT:
      return gate_CNOT();
    case G::CZ:
      return gate_CZ();
  }
  fail("gate_matrix: unknown gate");
}

struct CliffordGate {
  G g;
  uint32_t a = 0;
  uint32_t b = 0;  // second target; two-qubit gates only
};

namespace detail {

// Image of the single generator X_q or Z_q (as a PauliString on n qubits)
// under conjugation by the gate, g P g^dag. These are the textbook generator
// images; phases live in the i^s * X^x Z^z encoding, so S X S^dag = Y is
// (x=1, z=1, s=1).
inline PauliString generator_image(const CliffordGate& gate, uint32_t n,
                                   uint32_t q, bool is_x) {
  PauliString p = PauliString::identity(n);
  auto set = [&](uint32_t qq, uint8_t xv, uint8_t zv) {
    p.x[qq] = xv;
    p.z[qq] = zv;
  };
  switch (gate.g) {
    case G::X:
      if (q == gate.a && !is_x) {
        set(q, 0, 1);
        p.s = 2;
        return p;
      }
      break;
    case G::Y:
      if (q == gate.a) {
        set(q, is_x ? 1 : 0, is_x ? 0 : 1);
        p.s = 2;
        return p;
      }
      break;
    case G::Z:
      if (q == gate.a && is_x) {
        set(q, 1, 0);
        p.s = 2;
        return p;
      }
      break;
    case G::H:
      if (q == gate.a) {
        set(q, is_x ? 0 : 1, is_x ? 1 : 0);
        return p;
      }
      break;
    case G::S:
      if (q == gate.a && is_x) {
        set(q, 1, 1);
        p.s = 1;
        return p;
      }
      break;
    case G::Sdg:
      if (q == gate.a && is_x) {
        set(q, 1, 1);
        p.s = 3;
        return p;
      }
      break;
    case G::CNOT:
      if (q == gate.a && is_x) {
        set(gate.a, 1, 0);
        set(gate.b, 1, 0);
        return p;
      }
      if (q == gate.b && !is_x) {
        set(gate.a, 0, 1);
        set(gate.b, 0, 1);
        return p;
      }
      break;
    case G::CZ:
      if (q == gate.a && is_x) {
        set(gate.a, 1, 0);
        set(gate.b, 0, 1);
        return p;
      }
      if (q == gate.b && is_x) {
        set(gate.a, 0, 1);
        set(gate.b, 1, 0);
        return p;
      }
      break;
  }
  // Untouched generator.
  set(q, is_x ? 1 : 0, is_x ? 0 : 1);
  return p;
}

}  // namespace detail

// Conjugates P through one gate: returns g P g^dag. The ordered factor
// product of P is conjugated factor by factor; the exact PauliString product
// handles every overlap and phase.
inline PauliString conjugate_through(const PauliString& p,
                                     const CliffordGate& gate) {
  PauliString res = PauliString::identity(p.n);
  res.s = p.s;
  for (uint32_t q = 0; q < p.n; ++q) {
    if (p.x[q]) {
      res = res * detail::generator_image(gate, p.n, q, true);
    }
    if (p.z[q]) {
      res = res * detail::generator_image(gate, p.n, q, false);
    }
  }
  return res;
}

// A Clifford circuit as a gate word in application order: the operator is
// U = U_{w_k} ... U_{w_1} for word (w_1, ..., w_k).
struct CliffordOp {
  uint32_t n = 0;
  std::vector<CliffordGate> word;

  static CliffordOp identity(uint32_t n) {
    CliffordOp c;
    c.n = n;
    return c;
  }

  CliffordOp& then(G g, uint32_t a) {
    require(!gate_is_two_qubit(g), "CliffordOp::then: missing second target");
    require(a < n, "CliffordOp::then: target out of range");
    word.push_back({g, a, 0});
    return *this;
  }

  CliffordOp& then(G g, uint32_t a, uint32_t b) {
    require(gate_is_two_qubit(g), "CliffordOp::then: extra second target");
    require(a < n && b < n && a != b, "CliffordOp::then: bad targets");
    word.push_back({g, a, b});
    return *this;
  }

  CliffordOp& append(const CliffordOp& o) {
    require(o.n == n, "CliffordOp::append: width mismatch");
    word.insert(word.end(), o.word.begin(), o.word.end());
    return *this;
  }

  CliffordOp inverse() const {
    CliffordOp inv;
    inv.n = n;
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
      CliffordGate g = *it;
      if (g.g == G::S) {
        g.g = G::Sdg;
      } else if (g.g == G::Sdg) {
        g.g = G::S;
      }
      inv.word.push_back(g);
    }
    return inv;
  }

  // Symbolic route: U P U^dag via per-gate generator images.
  PauliString conjugate(const PauliString& p) const {
    require(p.n == n, "CliffordOp::conjugate: width mismatch");
    PauliString res = p;
    for (const auto& g : word) {
      res = conjugate_through(res, g);
    }
    return res;
  }

  // Dense route: multiply embedded gate matrices. Exponential in n; for
  // tests and local (few-qubit) terms only.
  Mat dense() const {
    size_t N = dim(n);
    Mat m = Mat::Identity(N, N);
    for (const auto& g : word) {
      std::vector<uint32_t> t;
      t.push_back(g.a);
      if (gate_is_two_qubit(g.g)) {
        t.push_back(g.b);
      }
      m = embed_op(gate_matrix(g.g), t, n) * m;
    }
    return m;
  }

  Vec apply(const Vec& psi) const {
    Vec res = psi;
    for (const auto& g : word) {
      std::vector<uint32_t> t;
      t.push_back(g.a);
      if (gate_is_two_qubit(g.g)) {
        t.push_back(g.b);
      }
      res = apply_op(res, gate_matrix(g.g), t, n);
    }
    return res;
  }
};

// C P = P' C with P' = C P C^dag.
inline PauliString pauli_conjugate(const CliffordOp& c, const PauliString& p) {
  return c.conjugate(p);
}

// Checks whether a dense k-qubit gate is Clifford by conjugating every X_j,
// Z_j generator and matching the result against i^e * (Pauli matrix).
inline bool dense_is_clifford(const Mat& g, uint32_t k) {
  Mat gd = g.adjoint();
  for (uint32_t j = 0; j < k; ++j) {
    for (bool is_x : {true, false}) {
      PauliString gen = PauliString::identity(k);
      (is_x ? gen.x : gen.z)[j] = 1;
      Mat m = g * pauli_matrix(gen) * gd;
      bool matched = false;
      for (uint64_t code = 0; code < (1ull << (2 * k)) && !matched; ++code) {
        PauliString q = PauliString::identity(k);
        for (uint32_t t = 0; t < k; ++t) {
          q.x[t] = (code >> (2 * t)) & 1;
          q.z[t] = (code >> (2 * t + 1)) & 1;
        }
        for (uint8_t e = 0; e < 4 && !matched; ++e) {
          q.s = e;
          if (approx_equal(m, pauli_matrix(q))) {
            matched = true;
          }
        }
      }
      if (!matched) {
        return false;
      }
    }
  }
  return true;
}

// Conjugation of P through an explicit dense gate. Rejects non-Clifford
// gates: the controlled phase diag(1,1,1,i) lands here.
inline PauliString pauli_conjugate(const Mat& g,
                                   const std::vector<uint32_t>& targets,
                                   const PauliString& p) {
  uint32_t k = static_cast<uint32_t>(targets.size());
  require(dense_is_clifford(g, k),
          "pauli_conjugate: gate is not Clifford; conjugation would leave "
          "the Pauli group");
  Mat full = embed_op(g, targets, p.n);
  Mat m = full * pauli_matrix(p) * full.adjoint();
  for (uint64_t code = 0; code < (1ull << (2 * p.n)); ++code) {
    PauliString q = PauliString::identity(p.n);
    for (uint32_t t = 0; t < p.n; ++t) {
      q.x[t] = (code >> (2 * t)) & 1;
      q.z[t] = (code >> (2 * t + 1)) & 1;
    }
    for (uint8_t e = 0; e < 4; ++e) {
      q.s = e;
      if (approx_equal(m, pauli_matrix(q))) {
        return q;
      }
    }
  }
  fail("pauli_conjugate: no Pauli match");
}

}  // namespace qnizk
