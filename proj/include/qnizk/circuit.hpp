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
#include <vector>

#include "json.hpp"
#include "qnizk/states.hpp"

namespace qnizk {

// Gate alphabet of verification circuits: CP is the controlled phase
// diag(1,1,1,i); HH applies a Hadamard to each of its two targets.
enum class GateKind : uint8_t { CP, HH };

struct CGate {
  GateKind kind;
  uint32_t a;
  uint32_t b;
};

// Data-qubit layout: instance [0, n), witness [n, n+c), ancilla [n+c, n+c+m).
// The designated output is data qubit 0.
struct Circuit {
  uint32_t n_instance = 0;
  uint32_t c_witness = 0;
  uint32_t m_ancilla = 0;
  std::vector<CGate> gates;

  uint32_t data_qubits() const { return n_instance + c_witness + m_ancilla; }
  uint32_t depth() const { return static_cast<uint32_t>(gates.size()); }

  bool has_hh() const {
    for (const auto& g : gates) {
      if (g.kind == GateKind::HH) {
        return true;
      }
    }
    return false;
  }

  void validate() const {
    require(data_qubits() >= 1, "circuit: no data qubits");
    require(data_qubits() <= 24, "circuit: too many data qubits");
    require(!gates.empty(), "circuit: needs at least one gate");
    for (const auto& g : gates) {
      require(g.a < data_qubits() && g.b < data_qubits(),
              "circuit: gate target out of range");
      require(g.a != g.b, "circuit: gate targets must differ");
    }
  }
};

inline const Mat& circuit_gate_matrix(GateKind k) {
  if (k == GateKind::CP) {
    return gate_CS();
  }
  static const Mat hh = kron(gate_H(), gate_H());
  return hh;
}

// Applies gates 1..upto (1-based, 0 = none) to a state over the data qubits.
inline Vec run_circuit_prefix(const Circuit& c, const Vec& input,
                              uint32_t upto) {
  require(upto <= c.depth(), "run_circuit_prefix: prefix too long");
  Vec psi = input;
  for (uint32_t t = 0; t < upto; ++t) {
    const CGate& g = c.gates[t];
    psi = apply_op(psi, circuit_gate_matrix(g.kind), {g.a, g.b},
                   c.data_qubits());
  }
  return psi;
}

inline Vec run_circuit(const Circuit& c, const Vec& input) {
  return run_circuit_prefix(c, input, c.depth());
}

// Probability that measuring the output qubit of U|x, w, 0^m> yields 1.
inline double acceptance_probability(const Circuit& c, const BitVec& x,
                                     const Vec& witness) {
  require(x.size() == c.n_instance, "acceptance_probability: bad instance");
  require(static_cast<size_t>(witness.size()) == dim(c.c_witness),
          "acceptance_probability: bad witness dimension");
  Vec in = basis_state(c.n_instance, x);
  Vec full = c.n_instance ? kron(in, witness) : witness;
  full = kron(full, ket0n(c.m_ancilla));
  Vec out = run_circuit(c, full);
  auto p = outcome_probabilities(out, {0}, c.data_qubits());
  return p[1];
}

inline nlohmann::json circuit_to_json(const Circuit& c) {
  nlohmann::json j;
  j["n_instance"] = c.n_instance;
  j["c_witness"] = c.c_witness;
  j["m_ancilla"] = c.m_ancilla;
  j["gates"] = nlohmann::json::array();
  for (const auto& g : c.gates) {
    j["gates"].push_back({{"kind", g.kind == GateKind::CP ? "CP" : "HH"},
                          {"targets", {g.a, g.b}}});
  }
  return j;
}

inline Circuit circuit_from_json(const nlohmann::json& j) {
  Circuit c;
  try {
    c.n_instance = j.at("n_instance").get<uint32_t>();
    c.c_witness = j.at("c_witness").get<uint32_t>();
    c.m_ancilla = j.at("m_ancilla").get<uint32_t>();
    for (const auto& gj : j.at("gates")) {
      CGate g;
      std::string kind = gj.at("kind").get<std::string>();
      if (kind == "CP") {
        g.kind = GateKind::CP;
      } else if (kind == "HH") {
        g.kind = GateKind::HH;
      } else {
        fail("circuit: unknown gate kind " + kind);
      }
      const auto& t = gj.at("targets");
      require(t.size() == 2, "circuit: gates take exactly two targets");
      g.a = t[0].get<uint32_t>();
      g.b = t[1].get<uint32_t>();
      c.gates.push_back(g);
    }
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("circuit: malformed JSON: ") + e.what());
  }
  c.validate();
  return c;
}

}  // namespace qnizk
