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

#include "qnizk/circuit.hpp"

namespace qnizk {
namespace fixtures {

// One instance wire (the output), one witness, one ancilla, one CP gate on
// (witness, ancilla). Accepts x=1 with witness |1>: the gate only rephases,
// so the output wire keeps the instance bit.
inline Circuit toy_accepting() {
  Circuit c;
  c.n_instance = 1;
  c.c_witness = 1;
  c.m_ancilla = 1;
  c.gates = {{GateKind::CP, 1, 2}};
  return c;
}

// No instance wires; output is the first witness wire.
inline Circuit toy_no_instance() {
  Circuit c;
  c.n_instance = 0;
  c.c_witness = 2;
  c.m_ancilla = 0;
  c.gates = {{GateKind::CP, 0, 1}};
  return c;
}

// Depth-2 CP chain: CP(witness, ancilla) then CP(instance, witness).
inline Circuit chain2() {
  Circuit c;
  c.n_instance = 1;
  c.c_witness = 1;
  c.m_ancilla = 1;
  c.gates = {{GateKind::CP, 1, 2}, {GateKind::CP, 0, 1}};
  return c;
}

// HH CP HH sandwich on (output, ancilla). With the ancilla pinned to |0> at
// the start, no input reaches acceptance probability 1 (the best is
// (1 + 1/sqrt 2)/2), so the reduced Hamiltonian has a strictly positive
// ground energy.
inline Circuit rejecting_hh() {
  Circuit c;
  c.n_instance = 1;
  c.c_witness = 1;
  c.m_ancilla = 1;
  c.gates = {{GateKind::HH, 0, 2},
             {GateKind::CP, 0, 2},
             {GateKind::HH, 0, 2}};
  return c;
}

// Mixed-alphabet circuit used to exercise the plain frame with HH present.
inline Circuit partial_hh() {
  Circuit c;
  c.n_instance = 1;
  c.c_witness = 1;
  c.m_ancilla = 1;
  c.gates = {{GateKind::CP, 1, 2}, {GateKind::HH, 1, 2}};
  return c;
}

}  // namespace fixtures
}  // namespace qnizk
