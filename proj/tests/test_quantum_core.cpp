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

#include "qnizk/clifford.hpp"
#include "qnizk/pauli.hpp"
#include "qnizk/states.hpp"

namespace qnizk {
namespace {

TEST(Bits, HexRoundTrip) {
  Rng rng(7);
  for (size_t len : {1u, 4u, 5u, 13u, 64u, 129u}) {
    BitVec v = rng.bits(len);
    EXPECT_EQ(from_hex(to_hex(v), len), v);
  }
  EXPECT_EQ(to_hex(BitVec{1, 0, 1, 1}), "b");
  EXPECT_EQ(to_hex(BitVec{1, 0, 1}), "5");
}

TEST(Bits, IntConversions) {
  EXPECT_EQ(bits_to_uint(BitVec{1, 0}), 2u);
  EXPECT_EQ(uint_to_bits(2, 2), (BitVec{1, 0}));
  EXPECT_EQ(parity(BitVec{1, 1, 1}), 1);
  EXPECT_EQ(dot2(BitVec{1, 1, 0}, BitVec{1, 0, 1}), 1);
}

TEST(Rng, DeterministicAndDerived) {
  Rng a(42), b(42);
  for (int i = 0; i < 16; ++i) {
    EXPECT_EQ(a.next_u64(), b.next_u64());
  }
  Rng c = Rng(42).derive("x"), d = Rng(42).derive("y");
  EXPECT_NE(c.next_u64(), d.next_u64());
  Rng e = Rng(42).derive("x", 0), f = Rng(42).derive("x", 1);
  EXPECT_NE(e.next_u64(), f.next_u64());
  // Derivation ignores the parent's draw position.
  Rng g(42);
  g.next_u64();
  EXPECT_EQ(g.derive("x").next_u64(), Rng(42).derive("x").next_u64());
}

TEST(Rng, BoundsAndPermutation) {
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    EXPECT_LT(rng.below(7), 7u);
  }
  auto p = rng.permutation(31);
  std::vector<bool> seen(31, false);
  for (uint32_t v : p) {
    ASSERT_LT(v, 31u);
    EXPECT_FALSE(seen[v]);
    seen[v] = true;
  }
  double s = 0;
  for (int i = 0; i < 1000; ++i) {
    s += rng.uniform01();
  }
  EXPECT_NEAR(s / 1000.0, 0.5, 0.05);
}

TEST(States, BigEndianIndexing) {
  // Qubit 0 is the most significant bit.
  Vec v = basis_state(2, {1, 0});
  EXPECT_NEAR(std::abs(v[2]), 1.0, kTolExact);
  EXPECT_EQ(index_bit(2, 2, 0), 1);
  EXPECT_EQ(index_bit(2, 2, 1), 0);
}

TEST(States, GateExamples) {
  // Controlled phase: only |11> picks up i.
  Vec v11 = basis_state(2, {1, 1});
  Vec out = apply_op(v11, gate_CS(), {0, 1}, 2);
  EXPECT_NEAR(std::abs(out[3] - cx(0, 1)), 0.0, kTolExact);
  // H ox H from |00>: uniform positive amplitudes.
  Vec v00 = ket0n(2);
  Vec hh = apply_op(v00, kron(gate_H(), gate_H()), {0, 1}, 2);
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(std::abs(hh[i] - cx(0.5, 0)), 0.0, kTolExact);
  }
}

TEST(States, ApplyOpMatchesEmbed) {
  Rng rng(3);
  uint32_t n = 4;
  Vec psi(dim(n));
  for (auto& a : psi) {
    a = cx(rng.uniform01() - 0.5, rng.uniform01() - 0.5);
  }
  psi.normalize();
  for (auto targets : std::vector<std::vector<uint32_t>>{{2, 0}, {1, 3}}) {
    Vec a = apply_op(psi, gate_CNOT(), targets, n);
    Vec b = embed_op(gate_CNOT(), targets, n) * psi;
    EXPECT_TRUE(approx_equal(a, b));
  }
}

TEST(States, ReducedDensity) {
  // Each half of an EPR pair is maximally mixed.
  Vec pair = epr_pair();
  Mat r0 = reduced_density(pair, {0}, 2);
  EXPECT_TRUE(approx_equal(r0, Mat(0.5 * Mat::Identity(2, 2))));
  // Product state reduces to its factor.
  Vec prod = kron(Vec(ket_plus()), basis_state(1, {1}));
  Mat r1 = reduced_density(prod, {0}, 2);
  EXPECT_TRUE(approx_equal(r1, Mat(ket_plus() * ket_plus().adjoint())));
  // Density-matrix route agrees with the pure-state route.
  Mat rho = pair * pair.adjoint();
  EXPECT_TRUE(approx_equal(reduced_density(rho, {1}, 2), r0));
}

TEST(States, MeasureCollapse) {
  Rng rng(5);
  Vec psi = kron(Vec(ket_plus()), basis_state(1, {1}));
  auto [bits, post] = measure(psi, {1}, 2, rng);
  EXPECT_EQ(bits, (BitVec{1}));
  EXPECT_NEAR(post.norm(), 1.0, kTolExact);
  int ones = 0;
  for (int i = 0; i < 1000; ++i) {
    auto [b, p] = measure(psi, {0}, 2, rng);
    ones += b[0];
  }
  EXPECT_NEAR(ones / 1000.0, 0.5, 0.05);
}

TEST(Pauli, ProductPhases) {
  // X Z = -i Y and Z X = i Y.
  PauliString X = PauliString::from_label("X");
  PauliString Z = PauliString::from_label("Z");
  auto [ph_xz, lbl_xz] = (X * Z).to_label();
  EXPECT_EQ(lbl_xz, "Y");
  EXPECT_EQ(ph_xz, 3);
  auto [ph_zx, lbl_zx] = (Z * X).to_label();
  EXPECT_EQ(lbl_zx, "Y");
  EXPECT_EQ(ph_zx, 1);
  EXPECT_FALSE(commutes(X, Z));
  EXPECT_TRUE(commutes(PauliString::from_label("XX"),
                       PauliString::from_label("ZZ")));
}

TEST(Pauli, MatrixAgreesWithApply) {
  Rng rng(11);
  uint32_t n = 3;
  for (int trial = 0; trial < 20; ++trial) {
    PauliString p = PauliString::identity(n);
    p.x = rng.bits(n);
    p.z = rng.bits(n);
    p.s = static_cast<uint8_t>(rng.below(4));
    Vec psi(dim(n));
    for (auto& a : psi) {
      a = cx(rng.uniform01() - 0.5, rng.uniform01() - 0.5);
    }
    psi.normalize();
    EXPECT_TRUE(approx_equal(apply_pauli(psi, p), Vec(pauli_matrix(p) * psi)));
  }
}

TEST(Pauli, LabelRoundTrip) {
  auto p = PauliString::from_label("XYZ", 2);
  auto [ph, lbl] = p.to_label();
  EXPECT_EQ(ph, 2);
  EXPECT_EQ(lbl, "XYZ");
}

TEST(Clifford, CnotConjugationByHand) {
  // CNOT (X ox Z) CNOT = (X ox X)(Z ox Z) = -(Y ox Y).
  PauliString p = PauliString::from_label("XZ");
  CliffordOp c = CliffordOp::identity(2);
  c.then(G::CNOT, 0, 1);
  PauliString q = c.conjugate(p);
  auto [ph, lbl] = q.to_label();
  EXPECT_EQ(lbl, "YY");
  EXPECT_EQ(ph, 2);
  EXPECT_EQ(q.s, 0);  // sign lives in the paired X,Z factors
}

TEST(Clifford, GeneratorImages) {
  CliffordOp s1 = CliffordOp::identity(1);
  s1.then(G::S, 0);
  auto [ph, lbl] = s1.conjugate(PauliString::from_label("X")).to_label();
  EXPECT_EQ(lbl, "Y");
  EXPECT_EQ(ph, 0);
  CliffordOp h = CliffordOp::identity(1);
  h.then(G::H, 0);
  EXPECT_EQ(h.conjugate(PauliString::from_label("X")).to_label().second, "Z");
  CliffordOp cz = CliffordOp::identity(2);
  cz.then(G::CZ, 0, 1);
  EXPECT_EQ(cz.conjugate(PauliString::from_label("XI")).to_label().second,
            "XZ");
  EXPECT_EQ(cz.conjugate(PauliString::from_label("IX")).to_label().second,
            "ZX");
}

TEST(Clifford, DenseMatchesSymbolic) {
  // Random words over the full alphabet; the dense and the generator-image
  // routes must produce the same conjugated Pauli, phase included.
  Rng rng(17);
  uint32_t n = 3;
  for (int trial = 0; trial < 30; ++trial) {
    CliffordOp c = CliffordOp::identity(n);
    for (int k = 0; k < 6; ++k) {
      G g = static_cast<G>(rng.below(8));
      uint32_t a = static_cast<uint32_t>(rng.below(n));
      if (gate_is_two_qubit(g)) {
        uint32_t b = static_cast<uint32_t>(rng.below(n - 1));
        if (b >= a) {
          ++b;
        }
        c.then(g, a, b);
      } else {
        c.then(g, a);
      }
    }
    PauliString p = PauliString::identity(n);
    p.x = rng.bits(n);
    p.z = rng.bits(n);
    p.s = static_cast<uint8_t>(rng.below(4));
    Mat lhs = c.dense() * pauli_matrix(p) * c.dense().adjoint();
    EXPECT_TRUE(approx_equal(lhs, pauli_matrix(c.conjugate(p))));
  }
}

TEST(Clifford, ExchangeRelation) {
  // C P = P' C with P' = C P C^dag.
  CliffordOp c = CliffordOp::identity(2);
  c.then(G::H, 0).then(G::CZ, 0, 1).then(G::S, 1);
  PauliString p = PauliString::from_label("XY");
  PauliString q = pauli_conjugate(c, p);
  Mat lhs = c.dense() * pauli_matrix(p);
  Mat rhs = pauli_matrix(q) * c.dense();
  EXPECT_TRUE(approx_equal(lhs, rhs));
}

TEST(Clifford, InverseWord) {
  CliffordOp c = CliffordOp::identity(2);
  c.then(G::S, 0).then(G::CNOT, 1, 0).then(G::Sdg, 1).then(G::H, 0);
  Mat prod = c.dense() * c.inverse().dense();
  EXPECT_TRUE(approx_equal(prod, Mat(Mat::Identity(4, 4))));
}

TEST(Clifford, DenseCliffordCheck) {
  EXPECT_TRUE(dense_is_clifford(gate_H(), 1));
  EXPECT_TRUE(dense_is_clifford(gate_S(), 1));
  EXPECT_TRUE(dense_is_clifford(gate_CNOT(), 2));
  EXPECT_TRUE(dense_is_clifford(gate_CZ(), 2));
  EXPECT_FALSE(dense_is_clifford(gate_CS(), 2));
  Mat t = mat2(1, 0, 0, std::polar(1.0, M_PI / 4));
  EXPECT_FALSE(dense_is_clifford(t, 1));
}

TEST(Clifford, ControlledPhaseConjugationRejected) {
  // The controlled phase maps X ox I outside the Pauli group, so symbolic
  // conjugation through it must refuse.
  PauliString p = PauliString::from_label("XI");
  EXPECT_THROW(pauli_conjugate(gate_CS(), {0, 1}, p), Error);
  // The Clifford member of the controlled family works fine.
  PauliString q = pauli_conjugate(gate_CZ(), {0, 1}, p);
  EXPECT_EQ(q.to_label().second, "XZ");
}

TEST(States, EqualUpToPhase) {
  Vec a = ket_plus();
  Vec b = cx(0, 1) * a;
  EXPECT_TRUE(equal_up_to_phase(a, b));
  EXPECT_FALSE(equal_up_to_phase(a, Vec(ket_minus())));
}

}  // namespace
}  // namespace qnizk
