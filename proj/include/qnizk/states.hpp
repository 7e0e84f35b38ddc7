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

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "qnizk/bits.hpp"
#include "qnizk/error.hpp"
#include "qnizk/rng.hpp"

namespace qnizk {

using cx = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

// Algebraic identities are checked to kTolExact; quantities that accumulate
// floating-point error over many operations to kTolNumeric; sampled statistics
// to kTolStat.
inline constexpr double kTolExact = 1e-9;
inline constexpr double kTolNumeric = 1e-7;
inline constexpr double kTolStat = 0.02;

inline size_t dim(uint32_t n) { return size_t{1} << n; }

// Qubit 0 is the most significant bit of a basis index.
inline uint8_t index_bit(size_t idx, uint32_t n, uint32_t q) {
  return static_cast<uint8_t>((idx >> (n - 1 - q)) & 1);
}

inline size_t qubit_mask(uint32_t n, uint32_t q) {
  return size_t{1} << (n - 1 - q);
}

inline Vec basis_state(uint32_t n, const BitVec& bits) {
  require(bits.size() == n, "basis_state: width mismatch");
  Vec v = Vec::Zero(dim(n));
  v[bits_to_uint(bits)] = 1.0;
  return v;
}

inline Vec ket0n(uint32_t n) { return basis_state(n, BitVec(n, 0)); }

inline Mat mat2(cx a, cx b, cx c, cx d) {
  Mat m(2, 2);
  m << a, b, c, d;
  return m;
}

inline const Mat& gate_I2() {
  static const Mat m = Mat::Identity(2, 2);
  return m;
}
inline const Mat& gate_X() {
  static const Mat m = mat2(0, 1, 1, 0);
  return m;
}
inline const Mat& gate_Y() {
  static const Mat m = mat2(0, cx(0, -1), cx(0, 1), 0);
  return m;
}
inline const Mat& gate_Z() {
  static const Mat m = mat2(1, 0, 0, -1);
  return m;
}
inline const Mat& gate_H() {
  static const Mat m = mat2(1, 1, 1, -1) / std::sqrt(2.0);
  return m;
}
inline const Mat& gate_S() {
  static const Mat m = mat2(1, 0, 0, cx(0, 1));
  return m;
}
inline const Mat& gate_Sdg() {
  static const Mat m = mat2(1, 0, 0, cx(0, -1));
  return m;
}
inline const Mat& gate_CNOT() {
  static const Mat m = [] {
    Mat g = Mat::Zero(4, 4);
    g(0, 0) = 1;
    g(1, 1) = 1;
    g(2, 3) = 1;
    g(3, 2) = 1;
    return g;
  }();
  return m;
}
inline const Mat& gate_CZ() {
  static const Mat m = [] {
    Mat g = Mat::Identity(4, 4);
    g(3, 3) = -1;
    return g;
  }();
  return m;
}
// Controlled phase; |11> picks up i.
inline const Mat& gate_CS() {
  static const Mat m = [] {
    Mat g = Mat::Identity(4, 4);
    g(3, 3) = cx(0, 1);
    return g;
  }();
  return m;
}
inline const Mat& gate_SWAP() {
  static const Mat m = [] {
    Mat g = Mat::Zero(4, 4);
    g(0, 0) = 1;
    g(1, 2) = 1;
    g(2, 1) = 1;
    g(3, 3) = 1;
    return g;
  }();
  return m;
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline Vec kron(const Vec& a, const Vec& b) {
  Vec out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a[i] * b;
  }
  return out;
}

inline Vec ket_plus() {
  Vec v(2);
  v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  return v;
}
inline Vec ket_minus() {
  Vec v(2);
  v << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
  return v;
}
inline Vec ket_plus_y() {
  Vec v(2);
  v << 1.0 / std::sqrt(2.0), cx(0, 1.0 / std::sqrt(2.0));
  return v;
}
inline Vec epr_pair() {
  Vec v = Vec::Zero(4);
  v[0] = 1.0 / std::sqrt(2.0);
  v[3] = 1.0 / std::sqrt(2.0);
  return v;
}

// Applies a 2^k x 2^k operator to the listed qubits of an n-qubit vector.
// The operator need not be unitary; this is plain linear action.
inline Vec apply_op(const Vec& psi, const Mat& g,
                    const std::vector<uint32_t>& targets, uint32_t n) {
  size_t N = dim(n);
  require(static_cast<size_t>(psi.size()) == N, "apply_op: dimension mismatch");
  uint32_t k = static_cast<uint32_t>(targets.size());
  size_t K = dim(k);
  require(static_cast<size_t>(g.rows()) == K &&
              static_cast<size_t>(g.cols()) == K,
          "apply_op: operator size mismatch");
  std::vector<size_t> tmask(k);
  size_t allmask = 0;
  for (uint32_t j = 0; j < k; ++j) {
    require(targets[j] < n, "apply_op: target out of range");
    tmask[j] = qubit_mask(n, targets[j]);
    require((allmask & tmask[j]) == 0, "apply_op: duplicate target");
    allmask |= tmask[j];
  }
  Vec out = Vec::Zero(N);
  Vec sub(K);
  for (size_t base = 0; base < N; ++base) {
    if (base & allmask) {
      continue;
    }
    for (size_t a = 0; a < K; ++a) {
      size_t full = base;
      for (uint32_t j = 0; j < k; ++j) {
        if ((a >> (k - 1 - j)) & 1) {
          full |= tmask[j];
        }
      }
      sub[a] = psi[full];
    }
    Vec res = g * sub;
    for (size_t a = 0; a < K; ++a) {
      size_t full = base;
      for (uint32_t j = 0; j < k; ++j) {
        if ((a >> (k - 1 - j)) & 1) {
          full |= tmask[j];
        }
      }
      out[full] = res[a];
    }
  }
  return out;
}

// Embeds a k-qubit operator into the full 2^n space.
inline Mat embed_op(const Mat& g, const std::vector<uint32_t>& targets,
                    uint32_t n) {
  size_t N = dim(n);
  Mat out(N, N);
  Vec col = Vec::Zero(N);
  for (size_t j = 0; j < N; ++j) {
    col.setZero();
    col[j] = 1.0;
    out.col(j) = apply_op(col, g, targets, n);
  }
  return out;
}

// Reduced density matrix on the listed qubits, in the order given.
inline Mat reduced_density(const Vec& psi, const std::vector<uint32_t>& keep,
                           uint32_t n) {
  size_t N = dim(n);
  require(static_cast<size_t>(psi.size()) == N,
          "reduced_density: dimension mismatch");
  uint32_t k = static_cast<uint32_t>(keep.size());
  size_t K = dim(k);
  std::vector<size_t> tmask(k);
  size_t allmask = 0;
  for (uint32_t j = 0; j < k; ++j) {
    tmask[j] = qubit_mask(n, keep[j]);
    allmask |= tmask[j];
  }
  Mat rho = Mat::Zero(K, K);
  Vec sub(K);
  for (size_t base = 0; base < N; ++base) {
    if (base & allmask) {
      continue;
    }
    for (size_t a = 0; a < K; ++a) {
      size_t full = base;
      for (uint32_t j = 0; j < k; ++j) {
        if ((a >> (k - 1 - j)) & 1) {
          full |= tmask[j];
        }
      }
      sub[a] = psi[full];
    }
    rho.noalias() += sub * sub.adjoint();
  }
  return rho;
}

inline Mat reduced_density(const Mat& rho_full,
                           const std::vector<uint32_t>& keep, uint32_t n) {
  size_t N = dim(n);
  require(static_cast<size_t>(rho_full.rows()) == N,
          "reduced_density: dimension mismatch");
  uint32_t k = static_cast<uint32_t>(keep.size());
  size_t K = dim(k);
  std::vector<size_t> tmask(k);
  size_t allmask = 0;
  for (uint32_t j = 0; j < k; ++j) {
    tmask[j] = qubit_mask(n, keep[j]);
    allmask |= tmask[j];
  }
  auto lift = [&](size_t base, size_t a) {
    size_t full = base;
    for (uint32_t j = 0; j < k; ++j) {
      if ((a >> (k - 1 - j)) & 1) {
        full |= tmask[j];
      }
    }
    return full;
  };
  Mat rho = Mat::Zero(K, K);
  for (size_t base = 0; base < N; ++base) {
    if (base & allmask) {
      continue;
    }
    for (size_t a = 0; a < K; ++a) {
      for (size_t b = 0; b < K; ++b) {
        rho(a, b) += rho_full(lift(base, a), lift(base, b));
      }
    }
  }
  return rho;
}

// Exact outcome distribution of a computational-basis measurement of the
// listed qubits. Entry w is the probability of reading the k-bit pattern w
// (big-endian over `targets`).
inline std::vector<double> outcome_probabilities(
    const Vec& psi, const std::vector<uint32_t>& targets, uint32_t n) {
  size_t N = dim(n);
  uint32_t k = static_cast<uint32_t>(targets.size());
  std::vector<double> p(dim(k), 0.0);
  for (size_t idx = 0; idx < N; ++idx) {
    double a = std::norm(psi[idx]);
    if (a == 0.0) {
      continue;
    }
    size_t w = 0;
    for (uint32_t j = 0; j < k; ++j) {
      w = (w << 1) | index_bit(idx, n, targets[j]);
    }
    p[w] += a;
  }
  return p;
}

inline std::vector<double> outcome_probabilities(
    const Mat& rho, const std::vector<uint32_t>& targets, uint32_t n) {
  size_t N = dim(n);
  uint32_t k = static_cast<uint32_t>(targets.size());
  std::vector<double> p(dim(k), 0.0);
  for (size_t idx = 0; idx < N; ++idx) {
    double a = std::real(rho(idx, idx));
    size_t w = 0;
    for (uint32_t j = 0; j < k; ++j) {
      w = (w << 1) | index_bit(idx, n, targets[j]);
    }
    p[w] += a;
  }
  return p;
}

inline size_t sample_index(const std::vector<double>& p, Rng& rng) {
  double u = rng.uniform01();
  double acc = 0.0;
  for (size_t i = 0; i < p.size(); ++i) {
    acc += p[i];
    if (u < acc) {
      return i;
    }
  }
  return p.size() - 1;
}

// Measures the listed qubits; returns the outcome bits and the collapsed,
// renormalized post-measurement state.
inline std::pair<BitVec, Vec> measure(const Vec& psi,
                                      const std::vector<uint32_t>& targets,
                                      uint32_t n, Rng& rng) {
  auto p = outcome_probabilities(psi, targets, n);
  size_t w = sample_index(p, rng);
  uint32_t k = static_cast<uint32_t>(targets.size());
  size_t N = dim(n);
  Vec post = Vec::Zero(N);
  for (size_t idx = 0; idx < N; ++idx) {
    size_t ww = 0;
    for (uint32_t j = 0; j < k; ++j) {
      ww = (ww << 1) | index_bit(idx, n, targets[j]);
    }
    if (ww == w) {
      post[idx] = psi[idx];
    }
  }
  post /= std::sqrt(p[w]);
  return {uint_to_bits(w, k), post};
}

inline double expval(const Mat& op, const std::vector<uint32_t>& targets,
                     const Vec& psi, uint32_t n) {
  Vec opsi = apply_op(psi, op, targets, n);
  cx v = psi.dot(opsi);  // Eigen dot conjugates the left argument
  require(std::abs(v.imag()) < kTolNumeric, "expval: non-real expectation");
  return v.real();
}

inline double expval(const Mat& op, const std::vector<uint32_t>& targets,
                     const Mat& rho, uint32_t n) {
  Mat red = reduced_density(rho, targets, n);
  cx v = (op * red).trace();
  require(std::abs(v.imag()) < kTolNumeric, "expval: non-real expectation");
  return v.real();
}

inline double total_variation(const std::vector<double>& p,
                              const std::vector<double>& q) {
  require(p.size() == q.size(), "total_variation: length mismatch");
  double s = 0.0;
  for (size_t i = 0; i < p.size(); ++i) {
    s += std::abs(p[i] - q[i]);
  }
  return 0.5 * s;
}

inline bool approx_equal(const Mat& a, const Mat& b, double tol = kTolExact) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    return false;
  }
  return (a - b).cwiseAbs().maxCoeff() <= tol;
}

inline bool approx_equal(const Vec& a, const Vec& b, double tol = kTolExact) {
  if (a.size() != b.size()) {
    return false;
  }
  return (a - b).cwiseAbs().maxCoeff() <= tol;
}

// Equality up to a global phase; returns false for zero vectors.
inline bool equal_up_to_phase(const Vec& a, const Vec& b,
                              double tol = kTolExact) {
  if (a.size() != b.size()) {
    return false;
  }
  Eigen::Index imax;
  a.cwiseAbs().maxCoeff(&imax);
  if (std::abs(a[imax]) < tol || std::abs(b[imax]) < tol) {
    return false;
  }
  cx phase = b[imax] / a[imax];
  if (std::abs(std::abs(phase) - 1.0) > 1e-6) {
    return false;
  }
  return approx_equal(a * phase, b, tol);
}

}  // namespace qnizk
