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

#include "json.hpp"
#include "qnizk/hash.hpp"
#include "qnizk/rng.hpp"

namespace qnizk {

// Bit commitment over Z_q, perfectly binding and trapdoor-extractable.
// Per committed bit b, with per-bit randomness expanded from the seed:
//   z1 = A*s + e, z2 = w^T*A, z3 = w^T*z1 + b*floor(q/2), z4 = A'*w + e'
// A and A' carry gadget-style trapdoors; the holder recovers (s, e) from z1
// and w from z4, which pins b exactly (z3 adds no fresh noise). Binding is
// unconditional at these parameters: two openings of one tuple would force
// |(w - w')^T e| = floor(q/2), impossible under the error bound.
struct ComParams {
  int64_t q = 3329;
  uint32_t n = 8;      // secret dimension (columns of A)
  uint32_t mbar = 8;   // uniform rows above each gadget section
  uint32_t k = 3;      // gadget digits
  int64_t base = 16;   // gadget radix, base^k >= q
  int64_t B = 4;       // error bound, entries uniform in [-B, B]

  uint32_t m() const { return mbar + n * k; }        // rows of A
  uint32_t mp() const { return mbar + m() * k; }     // rows of A'
  int64_t half_q() const { return q / 2; }
  int64_t noise_bound() const { return B * (1 + static_cast<int64_t>(mbar)); }

  void validate() const {
    require(q >= 3, "ComParams: q");
    for (int64_t d = 2; d * d <= q; ++d) {
      require(q % d != 0, "ComParams: q must be prime");
    }
    require(m() >= n, "ComParams: m >= n");
    int64_t pw = 1;
    for (uint32_t j = 0; j < k; ++j) {
      pw *= base;
    }
    require(pw >= q, "ComParams: gadget must cover Z_q");
    // Unique gadget decoding: no nonzero shift survives every digit row.
    int64_t nb = noise_bound();
    for (int64_t delta = 1; delta <= 2 * nb; ++delta) {
      bool all = true;
      int64_t p = 1;
      for (uint32_t j = 0; j < k; ++j) {
        int64_t r = (delta * p) % q;
        if (r > q / 2) {
          r -= q;
        }
        if (r > 2 * nb || r < -2 * nb) {
          all = false;
          break;
        }
        p *= base;
      }
      require(!all, "ComParams: gadget decoding not unique");
    }
    // Binding margin: the two-opening equation needs |(w-w')^T e| >= q/2.
    require(2 * static_cast<int64_t>(m()) * B < q / 4,
            "ComParams: binding bound violated");
  }
};

namespace detail {

inline int64_t mod_q(int64_t v, int64_t q) {
  int64_t r = v % q;
  return r < 0 ? r + q : r;
}

inline int64_t center_q(int64_t v, int64_t q) {
  int64_t r = mod_q(v, q);
  return r > q / 2 ? r - q : r;
}

// Flat row-major matrix-vector product mod q.
inline std::vector<int64_t> mat_vec(const std::vector<int64_t>& a,
                                    uint32_t rows, uint32_t cols,
                                    const std::vector<int64_t>& v, int64_t q) {
  require(a.size() == static_cast<size_t>(rows) * cols && v.size() == cols,
          "mat_vec: shape");
  std::vector<int64_t> out(rows, 0);
  for (uint32_t r = 0; r < rows; ++r) {
    int64_t acc = 0;
    const int64_t* row = a.data() + static_cast<size_t>(r) * cols;
    for (uint32_t c = 0; c < cols; ++c) {
      acc += row[c] * v[c];
    }
    out[r] = mod_q(acc, q);
  }
  return out;
}

// A trapdoored matrix: rows [0, mbar) uniform, rows [mbar, mbar + cols*k)
// equal to G - R*Abar, where G stacks the gadget digits of each coordinate.
struct TrapMatrix {
  std::vector<int64_t> a;  // (mbar + cols*k) x cols, row-major
  std::vector<int64_t> r;  // (cols*k) x mbar, entries in {-1, 0, 1}
};

inline TrapMatrix gen_trap(const ComParams& p, uint32_t cols, Rng& rng) {
  uint32_t rows = p.mbar + cols * p.k;
  TrapMatrix t;
  t.a.assign(static_cast<size_t>(rows) * cols, 0);
  t.r.assign(static_cast<size_t>(cols) * p.k * p.mbar, 0);
  for (uint32_t i = 0; i < p.mbar; ++i) {
    for (uint32_t c = 0; c < cols; ++c) {
      t.a[static_cast<size_t>(i) * cols + c] =
          static_cast<int64_t>(rng.below(p.q));
    }
  }
  for (auto& v : t.r) {
    v = static_cast<int64_t>(rng.below(3)) - 1;
  }
  for (uint32_t i = 0; i < cols; ++i) {
    int64_t pw = 1;
    for (uint32_t j = 0; j < p.k; ++j) {
      uint32_t row = p.mbar + i * p.k + j;
      for (uint32_t c = 0; c < cols; ++c) {
        int64_t g = c == i ? pw : 0;
        int64_t acc = 0;
        for (uint32_t h = 0; h < p.mbar; ++h) {
          acc += t.r[(static_cast<size_t>(i) * p.k + j) * p.mbar + h] *
                 t.a[static_cast<size_t>(h) * cols + c];
        }
        t.a[static_cast<size_t>(row) * cols + c] = mod_q(g - acc, p.q);
      }
      pw *= p.base;
    }
  }
  return t;
}

// Recovers (s, e) from c = A*s + e when every |e| entry is within the noise
// budget; nullopt when no (or no unique) preimage exists. e is centered.
inline std::optional<std::pair<std::vector<int64_t>, std::vector<int64_t>>>
invert_trap(const ComParams& p, const std::vector<int64_t>& a,
            const std::vector<int64_t>& r, uint32_t cols,
            const std::vector<int64_t>& c) {
  uint32_t rows = p.mbar + cols * p.k;
  if (c.size() != rows) {
    return std::nullopt;
  }
  int64_t nb = p.noise_bound();
  // g = c' + R*cbar = G*s + (e' + R*ebar), noise within nb per entry.
  std::vector<int64_t> g(cols * p.k);
  for (uint32_t i = 0; i < cols * p.k; ++i) {
    int64_t acc = c[p.mbar + i];
    for (uint32_t h = 0; h < p.mbar; ++h) {
      acc += r[static_cast<size_t>(i) * p.mbar + h] * c[h];
    }
    g[i] = mod_q(acc, p.q);
  }
  std::vector<int64_t> s(cols);
  for (uint32_t i = 0; i < cols; ++i) {
    int found = 0;
    int64_t hit = 0;
    for (int64_t t = -nb; t <= nb; ++t) {
      int64_t cand = mod_q(g[i * p.k] - t, p.q);
      bool ok = true;
      int64_t pw = 1;
      for (uint32_t j = 0; j < p.k; ++j) {
        int64_t res = center_q(g[i * p.k + j] - pw * cand, p.q);
        if (res > nb || res < -nb) {
          ok = false;
          break;
        }
        pw *= p.base;
      }
      if (ok && (found == 0 || hit != cand)) {
        ++found;
        hit = cand;
      }
    }
    if (found != 1) {
      return std::nullopt;
    }
    s[i] = hit;
  }
  std::vector<int64_t> as = mat_vec(a, rows, cols, s, p.q);
  std::vector<int64_t> e(rows);
  for (uint32_t i = 0; i < rows; ++i) {
    e[i] = center_q(c[i] - as[i], p.q);
  }
  return std::make_pair(std::move(s), std::move(e));
}

}  // namespace detail

struct ComPublicKey {
  ComParams params;
  std::vector<int64_t> a;   // m x n
  std::vector<int64_t> ap;  // mp x m
  uint64_t fingerprint = 0;
};

struct ComSecretKey {
  std::vector<int64_t> r;   // (n*k) x mbar
  std::vector<int64_t> rp;  // (m*k) x mbar
};

struct ComKeyPair {
  ComPublicKey pk;
  ComSecretKey sk;
};

inline nlohmann::json com_params_to_json(const ComParams& p) {
  return {{"q", p.q},       {"n", p.n}, {"mbar", p.mbar},
          {"k", p.k},       {"base", p.base}, {"B", p.B}};
}

inline ComParams com_params_from_json(const nlohmann::json& j) {
  ComParams p;
  try {
    p.q = j.at("q").get<int64_t>();
    p.n = j.at("n").get<uint32_t>();
    p.mbar = j.at("mbar").get<uint32_t>();
    p.k = j.at("k").get<uint32_t>();
    p.base = j.at("base").get<int64_t>();
    p.B = j.at("B").get<int64_t>();
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("ComParams: malformed JSON: ") + e.what());
  }
  p.validate();
  return p;
}

inline uint64_t com_pk_fingerprint(const ComParams& params,
                                   const std::vector<int64_t>& a,
                                   const std::vector<int64_t>& ap) {
  nlohmann::json j = {{"params", com_params_to_json(params)},
                      {"a", a},
                      {"ap", ap}};
  return hash64(bytes_of(j.dump()));
}

inline ComKeyPair com_gen(const ComParams& params, Rng& rng) {
  params.validate();
  detail::TrapMatrix t1 = detail::gen_trap(params, params.n, rng);
  detail::TrapMatrix t2 = detail::gen_trap(params, params.m(), rng);
  ComKeyPair kp;
  kp.pk.params = params;
  kp.pk.a = std::move(t1.a);
  kp.pk.ap = std::move(t2.a);
  kp.pk.fingerprint = com_pk_fingerprint(params, kp.pk.a, kp.pk.ap);
  kp.sk.r = std::move(t1.r);
  kp.sk.rp = std::move(t2.r);
  return kp;
}

// Expanded per-bit randomness. The seed is what gets revealed at opening
// time; everything below is a deterministic function of (seed, bit index).
struct ComRandomness {
  std::vector<int64_t> s;   // n
  std::vector<int64_t> e;   // m, in [-B, B]
  BitVec w;                 // m
  std::vector<int64_t> ep;  // mp, in [-B, B]
};

inline ComRandomness com_expand(const ComParams& p, uint64_t seed,
                                uint64_t index) {
  Rng rng = Rng(seed).derive("com-bit", index);
  ComRandomness r;
  for (uint32_t i = 0; i < p.n; ++i) {
    r.s.push_back(static_cast<int64_t>(rng.below(p.q)));
  }
  for (uint32_t i = 0; i < p.m(); ++i) {
    r.e.push_back(static_cast<int64_t>(rng.below(2 * p.B + 1)) - p.B);
  }
  r.w = rng.bits(p.m());
  for (uint32_t i = 0; i < p.mp(); ++i) {
    r.ep.push_back(static_cast<int64_t>(rng.below(2 * p.B + 1)) - p.B);
  }
  return r;
}

struct BitCommitment {
  std::vector<int64_t> z1;  // m
  std::vector<int64_t> z2;  // n
  int64_t z3 = 0;
  std::vector<int64_t> z4;  // mp
};

struct Commitment {
  uint64_t z0 = 0;  // public-key fingerprint standing in for the key itself
  std::vector<BitCommitment> bits;

  uint32_t width() const { return static_cast<uint32_t>(bits.size()); }
};

// The committing map for one bit, on explicit randomness. Exposed separately
// so degenerate parameter points are directly testable.
inline BitCommitment com_commit_bit(const ComParams& p,
                                    const std::vector<int64_t>& a,
                                    const std::vector<int64_t>& ap,
                                    const ComRandomness& r, uint8_t b) {
  uint32_t m = p.m();
  BitCommitment z;
  z.z1 = detail::mat_vec(a, m, p.n, r.s, p.q);
  for (uint32_t i = 0; i < m; ++i) {
    z.z1[i] = detail::mod_q(z.z1[i] + r.e[i], p.q);
  }
  z.z2.assign(p.n, 0);
  int64_t wz1 = 0;
  for (uint32_t i = 0; i < m; ++i) {
    if (!r.w[i]) {
      continue;
    }
    for (uint32_t c = 0; c < p.n; ++c) {
      z.z2[c] = detail::mod_q(z.z2[c] + a[static_cast<size_t>(i) * p.n + c],
                              p.q);
    }
    wz1 += z.z1[i];
  }
  z.z3 = detail::mod_q(wz1 + (b ? p.half_q() : 0), p.q);
  if (!ap.empty()) {
    z.z4.assign(p.mp(), 0);
    for (uint32_t row = 0; row < p.mp(); ++row) {
      int64_t acc = r.ep[row];
      for (uint32_t i = 0; i < m; ++i) {
        if (r.w[i]) {
          acc += ap[static_cast<size_t>(row) * m + i];
        }
      }
      z.z4[row] = detail::mod_q(acc, p.q);
    }
  }
  return z;
}

inline Commitment com_commit(const ComPublicKey& pk, const BitVec& payload,
                             uint64_t seed) {
  Commitment com;
  com.z0 = pk.fingerprint;
  for (size_t i = 0; i < payload.size(); ++i) {
    ComRandomness r = com_expand(pk.params, seed, i);
    com.bits.push_back(
        com_commit_bit(pk.params, pk.a, pk.ap, r, payload[i]));
  }
  return com;
}

inline bool com_verify(const ComPublicKey& pk, const Commitment& com,
                       const BitVec& payload, uint64_t seed) {
  if (com.z0 != pk.fingerprint || com.bits.size() != payload.size()) {
    return false;
  }
  for (size_t i = 0; i < payload.size(); ++i) {
    ComRandomness r = com_expand(pk.params, seed, i);
    BitCommitment z = com_commit_bit(pk.params, pk.a, pk.ap, r, payload[i]);
    const BitCommitment& got = com.bits[i];
    if (z.z1 != got.z1 || z.z2 != got.z2 || z.z3 != got.z3 ||
        z.z4 != got.z4) {
      return false;
    }
  }
  return true;
}

struct RecoveredOpening {
  BitVec payload;
  std::vector<ComRandomness> randomness;
};

// Trapdoor extraction: z1 yields (s, e), z4 yields w, and z3 - w^T z1 pins
// the bit exactly. Any malformed component reports failure (nullopt), which
// the callers translate into their bottom symbol.
inline std::optional<RecoveredOpening> com_recover(const ComPublicKey& pk,
                                                   const ComSecretKey& sk,
                                                   const Commitment& com) {
  const ComParams& p = pk.params;
  if (com.z0 != pk.fingerprint) {
    return std::nullopt;
  }
  RecoveredOpening out;
  for (const BitCommitment& z : com.bits) {
    if (z.z1.size() != p.m() || z.z2.size() != p.n || z.z4.size() != p.mp()) {
      return std::nullopt;
    }
    auto se = detail::invert_trap(p, pk.a, sk.r, p.n, z.z1);
    if (!se) {
      return std::nullopt;
    }
    auto we = detail::invert_trap(p, pk.ap, sk.rp, p.m(), z.z4);
    if (!we) {
      return std::nullopt;
    }
    ComRandomness r;
    r.s = se->first;
    r.e = se->second;
    r.ep = we->second;
    for (int64_t v : r.e) {
      if (v > p.B || v < -p.B) {
        return std::nullopt;
      }
    }
    for (int64_t v : r.ep) {
      if (v > p.B || v < -p.B) {
        return std::nullopt;
      }
    }
    r.w.resize(p.m());
    int64_t wz1 = 0;
    for (uint32_t i = 0; i < p.m(); ++i) {
      int64_t wi = we->first[i];
      if (wi != 0 && wi != 1) {
        return std::nullopt;
      }
      r.w[i] = static_cast<uint8_t>(wi);
      if (wi) {
        wz1 += z.z1[i];
      }
    }
    // w must reproduce z2 exactly; then the bit is determined.
    std::vector<int64_t> z2(p.n, 0);
    for (uint32_t i = 0; i < p.m(); ++i) {
      if (!r.w[i]) {
        continue;
      }
      for (uint32_t c = 0; c < p.n; ++c) {
        z2[c] =
            detail::mod_q(z2[c] + pk.a[static_cast<size_t>(i) * p.n + c], p.q);
      }
    }
    if (z2 != z.z2) {
      return std::nullopt;
    }
    int64_t diff = detail::mod_q(z.z3 - wz1, p.q);
    if (diff == 0) {
      out.payload.push_back(0);
    } else if (diff == p.half_q()) {
      out.payload.push_back(1);
    } else {
      return std::nullopt;
    }
    out.randomness.push_back(std::move(r));
  }
  return out;
}

inline nlohmann::json com_pk_to_json(const ComPublicKey& pk) {
  return {{"params", com_params_to_json(pk.params)},
          {"a", pk.a},
          {"ap", pk.ap}};
}

inline ComPublicKey com_pk_from_json(const nlohmann::json& j) {
  ComPublicKey pk;
  try {
    pk.params = com_params_from_json(j.at("params"));
    pk.a = j.at("a").get<std::vector<int64_t>>();
    pk.ap = j.at("ap").get<std::vector<int64_t>>();
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("ComPublicKey: malformed JSON: ") + e.what());
  }
  require(pk.a.size() ==
              static_cast<size_t>(pk.params.m()) * pk.params.n &&
          pk.ap.size() ==
              static_cast<size_t>(pk.params.mp()) * pk.params.m(),
          "ComPublicKey: matrix shape");
  pk.fingerprint = com_pk_fingerprint(pk.params, pk.a, pk.ap);
  return pk;
}

inline nlohmann::json com_to_json(const Commitment& com) {
  nlohmann::json bits = nlohmann::json::array();
  for (const BitCommitment& z : com.bits) {
    bits.push_back(
        {{"z1", z.z1}, {"z2", z.z2}, {"z3", z.z3}, {"z4", z.z4}});
  }
  return {{"z0", com.z0}, {"bits", bits}};
}

inline Commitment com_from_json(const nlohmann::json& j) {
  Commitment com;
  try {
    com.z0 = j.at("z0").get<uint64_t>();
    for (const auto& b : j.at("bits")) {
      BitCommitment z;
      z.z1 = b.at("z1").get<std::vector<int64_t>>();
      z.z2 = b.at("z2").get<std::vector<int64_t>>();
      z.z3 = b.at("z3").get<int64_t>();
      z.z4 = b.at("z4").get<std::vector<int64_t>>();
      com.bits.push_back(std::move(z));
    }
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("Commitment: malformed JSON: ") + e.what());
  }
  return com;
}

}  // namespace qnizk
