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

#include <Eigen/Eigenvalues>
#include <optional>

#include "qnizk/circuit.hpp"
#include "qnizk/clifford.hpp"

namespace qnizk {

// One local energy term, stored as a projector on its qubit support together
// with the unitary that rotates it onto "all zeros on the subset `proj`":
//
//   mat == conj^dag * P0(proj) * conj
//
// where P0(proj) projects the listed local wires onto |0> and leaves the
// rest alone. `word` is set when conj is a Clifford circuit; the propagation
// terms of the plain (undressed) reduction have no word because their conj
// involves a controlled non-Pauli gate.
struct Term {
  std::string label;
  std::vector<uint32_t> qubits;      // global indices, ascending
  std::vector<uint32_t> proj;        // local indices projected onto |0>
  Mat mat;                           // 2^k x 2^k projector
  Mat conj;                          // dense unitary on the k local wires
  std::optional<CliffordOp> word;    // Clifford word for conj, when one exists

  uint32_t arity() const { return static_cast<uint32_t>(qubits.size()); }

  Mat zero_projector() const {
    size_t K = dim(arity());
    Mat p = Mat::Identity(K, K);
    for (uint32_t loc : proj) {
      Mat pi0 = Mat::Zero(2, 2);
      pi0(0, 0) = 1;
      p = embed_op(pi0, {loc}, arity()) * p;
    }
    return p;
  }

  // Checks the defining identity to exact tolerance.
  bool well_formed() const {
    Mat rebuilt = conj.adjoint() * zero_projector() * conj;
    if (!approx_equal(rebuilt, mat)) {
      return false;
    }
    if (word) {
      if (word->n != arity()) {
        return false;
      }
      if (!approx_equal(word->dense(), conj)) {
        return false;
      }
    }
    return true;
  }
};

enum class Frame : uint8_t {
  kPlain,    // propagation terms carry the circuit unitaries
  kDressed,  // conjugated frame; every term is a Clifford form
};

// Register layout of the reduction, all indices global and big-endian:
// clock [0, T), instance [T, T+n), witness, ancilla. Data qubit d of the
// circuit sits at global index T + d. The clock is unary: time t is encoded
// as 1^t 0^(T-t) on the clock wires.
struct Hamiltonian {
  Frame frame = Frame::kPlain;
  Circuit circuit;
  uint32_t T = 0;
  std::vector<Term> terms;

  uint32_t num_qubits() const { return T + circuit.data_qubits(); }
  uint32_t clock_qubit(uint32_t t) const {  // t in [1, T]
    require(t >= 1 && t <= T, "clock_qubit: time out of range");
    return t - 1;
  }
  uint32_t data_qubit(uint32_t d) const { return T + d; }
  uint32_t out_qubit() const { return T; }
  uint32_t num_terms() const { return static_cast<uint32_t>(terms.size()); }

  size_t clock_index(uint32_t t) const {  // basis value of the unary pattern
    return (size_t{1} << T) - (size_t{1} << (T - t));
  }
};

namespace detail {

inline Mat pi0_1q() {
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = 1;
  return m;
}
inline Mat pi1_1q() {
  Mat m = Mat::Zero(2, 2);
  m(1, 1) = 1;
  return m;
}

// Controlled-U on (control, 2 data wires), 8x8.
inline Mat controlled(const Mat& u) {
  Mat out = Mat::Identity(8, 8);
  out.block(4, 4, 4, 4) = u;
  return out;
}

// Half-projector core of a propagation term on (clock_t, data, data):
// (1/2)(I - |1><0| ox U - |0><1| ox U^dag).
inline Mat prop_core(const Mat& u) {
  Mat out = Mat::Identity(8, 8);
  out.block(4, 0, 4, 4) = -u;
  out.block(0, 4, 4, 4) = -u.adjoint();
  return 0.5 * out;
}

inline Term make_pattern_term(const std::string& label, uint32_t q0,
                              uint32_t q1, uint8_t b0, uint8_t b1) {
  // Projector onto the two-qubit pattern (b0, b1); conj is the X word that
  // maps the pattern to |00>.
  Term t;
  t.label = label;
  t.qubits = {q0, q1};
  t.proj = {0, 1};
  CliffordOp w = CliffordOp::identity(2);
  if (b0) {
    w.then(G::X, 0);
  }
  if (b1) {
    w.then(G::X, 1);
  }
  t.word = w;
  t.conj = w.dense();
  size_t pattern = static_cast<size_t>(b0) * 2 + b1;
  t.mat = Mat::Zero(4, 4);
  t.mat(pattern, pattern) = 1;
  return t;
}

}  // namespace detail

// Builds the local Hamiltonian for a verification circuit. The plain frame
// is the direct clock construction; the dressed frame conjugates every
// propagation term by the controlled history unitary, which for a CP-only
// circuit is diagonal and leaves all other terms untouched, so the two
// frames are unitarily equivalent with identical spectra.
//
// Term order: input terms (one per ancilla), output term, propagation terms
// t = 1..T, clock terms t = 1..T-1.
inline Hamiltonian reduce_circuit(const Circuit& circuit,
                                  Frame frame = Frame::kPlain) {
  circuit.validate();
  if (frame == Frame::kDressed) {
    require(!circuit.has_hh(),
            "dressed frame requires a CP-only circuit: the controlled "
            "history unitary of an HH gate does not commute with the "
            "boundary terms");
  }
  Hamiltonian h;
  h.frame = frame;
  h.circuit = circuit;
  h.T = circuit.depth();
  uint32_t T = h.T;

  // Input terms: ancilla wire must be 0 while the clock has not started.
  for (uint32_t i = 0; i < circuit.m_ancilla; ++i) {
    uint32_t anc = h.data_qubit(circuit.n_instance + circuit.c_witness + i);
    h.terms.push_back(detail::make_pattern_term("in:" + std::to_string(i),
                                                h.clock_qubit(1), anc, 0, 1));
  }

  // Output term: output wire must be 1 once the clock has finished.
  h.terms.push_back(detail::make_pattern_term("out", h.clock_qubit(T),
                                              h.out_qubit(), 1, 0));

  // Propagation terms.
  for (uint32_t t = 1; t <= T; ++t) {
    const CGate& g = circuit.gates[t - 1];
    uint32_t d0 = std::min(g.a, g.b);
    uint32_t d1 = std::max(g.a, g.b);
    // The gate matrices are symmetric under target swap, so sorting the
    // targets does not change the term. In the dressed frame the controlled
    // history unitary has already absorbed the gate.
    Mat u = frame == Frame::kDressed ? Mat(Mat::Identity(4, 4))
                                     : circuit_gate_matrix(g.kind);
    bool has_left = t >= 2;
    bool has_right = t <= T - 1;

    Term term;
    term.label = "prop:" + std::to_string(t);
    if (has_left) {
      term.qubits.push_back(h.clock_qubit(t - 1));
    }
    term.qubits.push_back(h.clock_qubit(t));
    if (has_right) {
      term.qubits.push_back(h.clock_qubit(t + 1));
    }
    uint32_t n_clock = static_cast<uint32_t>(term.qubits.size());
    term.qubits.push_back(h.data_qubit(d0));
    term.qubits.push_back(h.data_qubit(d1));
    uint32_t k = n_clock + 2;

    uint32_t loc_left = 0;                     // valid when has_left
    uint32_t loc_mid = has_left ? 1 : 0;       // clock_t
    uint32_t loc_right = loc_mid + 1;          // valid when has_right
    std::vector<uint32_t> loc_core = {loc_mid, n_clock, n_clock + 1};

    for (uint32_t lc = 0; lc < n_clock; ++lc) {
      term.proj.push_back(lc);
    }

    Mat mat = embed_op(detail::prop_core(u), loc_core, k);
    if (has_left) {
      mat = embed_op(detail::pi1_1q(), {loc_left}, k) * mat;
    }
    if (has_right) {
      mat = embed_op(detail::pi0_1q(), {loc_right}, k) * mat;
    }
    term.mat = mat;

    // conj = X_left * (X H)_mid * controlled-U^dag, so that
    // conj^dag P0 conj reproduces mat exactly.
    if (frame == Frame::kDressed) {
      CliffordOp w = CliffordOp::identity(k);
      w.then(G::H, loc_mid).then(G::X, loc_mid);
      if (has_left) {
        w.then(G::X, loc_left);
      }
      term.word = w;
      term.conj = w.dense();
    } else {
      Mat conj = embed_op(detail::controlled(u).adjoint(), loc_core, k);
      conj = embed_op(gate_H(), {loc_mid}, k) * conj;
      conj = embed_op(gate_X(), {loc_mid}, k) * conj;
      if (has_left) {
        conj = embed_op(gate_X(), {loc_left}, k) * conj;
      }
      term.conj = conj;
    }
    h.terms.push_back(std::move(term));
  }

  // Clock terms: forbid the non-unary pattern 0 -> 1.
  for (uint32_t t = 1; t + 1 <= T; ++t) {
    h.terms.push_back(detail::make_pattern_term("clock:" + std::to_string(t),
                                                h.clock_qubit(t),
                                                h.clock_qubit(t + 1), 0, 1));
  }
  return h;
}

// In the dressed frame the propagation terms lose the circuit unitaries, so
// the honest ground state factorizes into (uniform legal clock) ox (input).
inline Vec clock_superposition(uint32_t T) {
  Hamiltonian tmp;
  tmp.T = T;
  Vec v = Vec::Zero(dim(T));
  double a = 1.0 / std::sqrt(static_cast<double>(T) + 1.0);
  for (uint32_t t = 0; t <= T; ++t) {
    v[tmp.clock_index(t)] = a;
  }
  return v;
}

inline Vec circuit_input_state(const Circuit& c, const BitVec& x,
                               const Vec& witness) {
  require(x.size() == c.n_instance, "circuit_input_state: bad instance");
  require(static_cast<size_t>(witness.size()) == dim(c.c_witness),
          "circuit_input_state: bad witness dimension");
  Vec in = c.n_instance ? kron(basis_state(c.n_instance, x), witness)
                        : witness;
  return kron(in, ket0n(c.m_ancilla));
}

// History state in the requested frame. Plain: sum_t |unary t> ox (prefix_t
// applied to the input). Dressed: (uniform clock) ox input.
inline Vec history_state(const Hamiltonian& h, const BitVec& x,
                         const Vec& witness) {
  const Circuit& c = h.circuit;
  Vec base = circuit_input_state(c, x, witness);
  size_t D = dim(c.data_qubits());
  if (h.frame == Frame::kDressed) {
    return kron(clock_superposition(h.T), base);
  }
  Vec out = Vec::Zero(dim(h.num_qubits()));
  double a = 1.0 / std::sqrt(static_cast<double>(h.T) + 1.0);
  for (uint32_t t = 0; t <= h.T; ++t) {
    Vec psi_t = run_circuit_prefix(c, base, t);
    out.segment(h.clock_index(t) * D, D) = a * psi_t;
  }
  return out;
}

inline double term_energy(const Hamiltonian& h, const Term& t,
                          const Vec& psi) {
  return expval(t.mat, t.qubits, psi, h.num_qubits());
}
inline double term_energy(const Hamiltonian& h, const Term& t,
                          const Mat& rho) {
  return expval(t.mat, t.qubits, rho, h.num_qubits());
}

template <class State>
inline double energy(const Hamiltonian& h, const State& s) {
  double e = 0.0;
  for (const auto& t : h.terms) {
    e += term_energy(h, t, s);
  }
  return e;
}

inline Mat full_matrix(const Hamiltonian& h) {
  size_t N = dim(h.num_qubits());
  Mat m = Mat::Zero(N, N);
  for (const auto& t : h.terms) {
    m += embed_op(t.mat, t.qubits, h.num_qubits());
  }
  return m;
}

inline double min_eigenvalue(const Hamiltonian& h) {
  Eigen::SelfAdjointEigenSolver<Mat> solver(full_matrix(h));
  return solver.eigenvalues()[0];
}

// Clock measurement channel: reads the clock register, uncomputes the
// circuit prefix matching the observed time, and discards the clock. Clock
// patterns that are not legal unary words map to the fixed state |0...0>.
// In the dressed frame the uncompute step is the identity.
inline Mat tau(const Hamiltonian& h, const Vec& psi) {
  const Circuit& c = h.circuit;
  uint32_t D_qubits = c.data_qubits();
  size_t D = dim(D_qubits);
  require(static_cast<size_t>(psi.size()) == dim(h.num_qubits()),
          "tau: dimension mismatch");
  std::vector<int64_t> time_of(dim(h.T), -1);
  for (uint32_t t = 0; t <= h.T; ++t) {
    time_of[h.clock_index(t)] = t;
  }
  Mat out = Mat::Zero(D, D);
  for (size_t g = 0; g < dim(h.T); ++g) {
    Vec branch = psi.segment(g * D, D);
    double w = branch.squaredNorm();
    if (w < 1e-300) {
      continue;
    }
    if (time_of[g] < 0) {
      out(0, 0) += w;
      continue;
    }
    if (h.frame == Frame::kPlain) {
      uint32_t t = static_cast<uint32_t>(time_of[g]);
      for (uint32_t s = t; s >= 1; --s) {
        const CGate& gate = c.gates[s - 1];
        branch = apply_op(branch, circuit_gate_matrix(gate.kind).adjoint(),
                          {gate.a, gate.b}, D_qubits);
      }
    }
    out.noalias() += branch * branch.adjoint();
  }
  return out;
}

inline Mat tau(const Hamiltonian& h, const Mat& rho) {
  const Circuit& c = h.circuit;
  uint32_t D_qubits = c.data_qubits();
  size_t D = dim(D_qubits);
  require(static_cast<size_t>(rho.rows()) == dim(h.num_qubits()),
          "tau: dimension mismatch");
  std::vector<int64_t> time_of(dim(h.T), -1);
  for (uint32_t t = 0; t <= h.T; ++t) {
    time_of[h.clock_index(t)] = t;
  }
  Mat out = Mat::Zero(D, D);
  for (size_t g = 0; g < dim(h.T); ++g) {
    Mat block = rho.block(g * D, g * D, D, D);
    double w = std::real(block.trace());
    if (w < 1e-300) {
      continue;
    }
    if (time_of[g] < 0) {
      out(0, 0) += w;
      continue;
    }
    if (h.frame == Frame::kPlain) {
      uint32_t t = static_cast<uint32_t>(time_of[g]);
      for (uint32_t s = t; s >= 1; --s) {
        const CGate& gate = c.gates[s - 1];
        Mat u = embed_op(circuit_gate_matrix(gate.kind).adjoint(),
                         {gate.a, gate.b}, D_qubits);
        block = u * block * u.adjoint();
      }
    }
    out += block;
  }
  return out;
}

// The extra challenge checks the instance register against x at time zero.
// It is not an energy term of the reduction; its failure projector is
// |0><0| on clock wire 1 tensored with (I - |x><x|) on the instance block.
inline Term instance_challenge_term(const Hamiltonian& h, const BitVec& x) {
  require(x.size() == h.circuit.n_instance,
          "instance_challenge_term: bad instance width");
  uint32_t n = h.circuit.n_instance;
  Term t;
  t.label = "inst";
  t.qubits.push_back(h.clock_qubit(1));
  for (uint32_t i = 0; i < n; ++i) {
    t.qubits.push_back(h.data_qubit(i));
  }
  size_t K = dim(n);
  Mat miss = Mat::Identity(K, K);
  size_t xv = bits_to_uint(x);
  miss(xv, xv) = 0;
  t.mat = kron(detail::pi0_1q(), miss);
  t.conj = Mat::Identity(2 * K, 2 * K);
  // Not a conjugated-zero form; proj stays empty and well_formed() is not
  // meaningful for this bookkeeping term.
  return t;
}

inline nlohmann::json hamiltonian_to_json(const Hamiltonian& h) {
  nlohmann::json j;
  j["frame"] = h.frame == Frame::kPlain ? "plain" : "dressed";
  j["num_qubits"] = h.num_qubits();
  j["circuit"] = circuit_to_json(h.circuit);
  nlohmann::json reg;
  reg["clock"] = {0, h.T};
  reg["instance"] = {h.T, h.T + h.circuit.n_instance};
  uint32_t w0 = h.T + h.circuit.n_instance;
  reg["witness"] = {w0, w0 + h.circuit.c_witness};
  uint32_t a0 = w0 + h.circuit.c_witness;
  reg["ancilla"] = {a0, a0 + h.circuit.m_ancilla};
  j["register_map"] = reg;
  j["terms"] = nlohmann::json::array();
  for (const auto& t : h.terms) {
    nlohmann::json tj;
    tj["label"] = t.label;
    tj["qubits"] = t.qubits;
    tj["proj"] = t.proj;
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < t.mat.rows(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (Eigen::Index c = 0; c < t.mat.cols(); ++c) {
        row.push_back({t.mat(r, c).real(), t.mat(r, c).imag()});
      }
      rows.push_back(row);
    }
    tj["matrix"] = rows;
    if (t.word) {
      nlohmann::json wj = nlohmann::json::array();
      for (const auto& g : t.word->word) {
        nlohmann::json gj;
        gj["g"] = gate_name(g.g);
        if (gate_is_two_qubit(g.g)) {
          gj["q"] = {g.a, g.b};
        } else {
          gj["q"] = {g.a};
        }
        wj.push_back(gj);
      }
      tj["clifford_word"] = wj;
    }
    j["terms"].push_back(tj);
  }
  return j;
}

}  // namespace qnizk
