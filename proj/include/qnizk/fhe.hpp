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

#include <functional>

#include "json.hpp"
#include "qnizk/hash.hpp"
#include "qnizk/rng.hpp"

namespace qnizk {

// Transparent reference backend: ciphertexts carry the plaintext openly,
// tagged with a key id and a nonce. What the interface guarantees, and what
// the tests pin down, is the *shape* of the contract: perfect correctness of
// evaluation, key separation, and the circuit-privacy behavior of refresh
// (output distribution a function of key and plaintext only). A levelled
// scheme can replace this backend without touching any caller.
struct FhePublicKey {
  uint64_t id_hi = 0;
  uint64_t id_lo = 0;
};

struct FheSecretKey {
  uint64_t id_hi = 0;
  uint64_t id_lo = 0;
};

struct FheKeyPair {
  FhePublicKey pk;
  FheSecretKey sk;
};

inline FheKeyPair fhe_gen(Rng& rng) {
  FheKeyPair kp;
  kp.pk.id_hi = kp.sk.id_hi = rng.next_u64();
  kp.pk.id_lo = kp.sk.id_lo = rng.next_u64();
  return kp;
}

struct FheCiphertext {
  uint64_t key_hi = 0;
  uint64_t key_lo = 0;
  Bytes payload;
  uint64_t nonce = 0;
};

inline FheCiphertext fhe_enc(const FhePublicKey& pk, const Bytes& plaintext,
                             Rng& rng) {
  return {pk.id_hi, pk.id_lo, plaintext, rng.next_u64()};
}

inline Bytes fhe_dec(const FheSecretKey& sk, const FheCiphertext& ct) {
  require(ct.key_hi == sk.id_hi && ct.key_lo == sk.id_lo,
          "fhe_dec: ciphertext under a different key");
  return ct.payload;
}

// Boolean circuit over single-bit wires. Wires [0, n_in) are the inputs;
// gate i writes wire n_in + i.
struct BoolGate {
  enum class Op : uint8_t { kXor, kAnd, kNot, kConst };
  Op op = Op::kXor;
  uint32_t a = 0;
  uint32_t b = 0;
  uint8_t c = 0;  // kConst value
};

struct BoolCircuit {
  uint32_t n_in = 0;
  std::vector<BoolGate> gates;
  std::vector<uint32_t> outputs;

  void validate() const {
    for (size_t i = 0; i < gates.size(); ++i) {
      uint32_t limit = n_in + static_cast<uint32_t>(i);
      const BoolGate& g = gates[i];
      switch (g.op) {
        case BoolGate::Op::kXor:
        case BoolGate::Op::kAnd:
          require(g.a < limit && g.b < limit, "BoolCircuit: wire range");
          break;
        case BoolGate::Op::kNot:
          require(g.a < limit, "BoolCircuit: wire range");
          break;
        case BoolGate::Op::kConst:
          break;
      }
    }
    uint32_t total = n_in + static_cast<uint32_t>(gates.size());
    for (uint32_t o : outputs) {
      require(o < total, "BoolCircuit: output wire range");
    }
  }

  BitVec eval(const BitVec& in) const {
    require(in.size() == n_in, "BoolCircuit: input width mismatch");
    BitVec wires = in;
    for (const BoolGate& g : gates) {
      uint8_t v = 0;
      switch (g.op) {
        case BoolGate::Op::kXor:
          v = wires[g.a] ^ wires[g.b];
          break;
        case BoolGate::Op::kAnd:
          v = wires[g.a] & wires[g.b];
          break;
        case BoolGate::Op::kNot:
          v = wires[g.a] ^ 1;
          break;
        case BoolGate::Op::kConst:
          v = g.c;
          break;
      }
      wires.push_back(v);
    }
    BitVec out;
    for (uint32_t o : outputs) {
      out.push_back(wires[o]);
    }
    return out;
  }

  uint64_t digest() const {
    nlohmann::json j;
    j["n_in"] = n_in;
    nlohmann::json gs = nlohmann::json::array();
    for (const BoolGate& g : gates) {
      gs.push_back({static_cast<int>(g.op), g.a, g.b, g.c});
    }
    j["gates"] = gs;
    j["outputs"] = outputs;
    return hash64(bytes_of(j.dump()));
  }
};

namespace detail {

inline uint64_t evolve_nonce(uint64_t nonce, uint64_t circuit_digest) {
  uint64_t st = nonce ^ circuit_digest;
  return splitmix64(st);
}

}  // namespace detail

// Homomorphic evaluation of a boolean circuit: the payload bytes are read as
// one bit each. The output nonce is a deterministic function of the input
// nonce and the circuit, so evaluation histories remain distinguishable
// until a refresh wipes them.
inline FheCiphertext fhe_eval(const FhePublicKey& pk, const BoolCircuit& c,
                              const FheCiphertext& ct) {
  require(ct.key_hi == pk.id_hi && ct.key_lo == pk.id_lo,
          "fhe_eval: ciphertext under a different key");
  c.validate();
  BitVec in(ct.payload.begin(), ct.payload.end());
  for (uint8_t b : in) {
    require(b <= 1, "fhe_eval: payload is not a bitstring");
  }
  BitVec out = c.eval(in);
  return {pk.id_hi, pk.id_lo, Bytes(out.begin(), out.end()),
          detail::evolve_nonce(ct.nonce, c.digest())};
}

// Host-defined plaintext transformations, for circuits whose verbatim gate
// expansion would dwarf the artifact (the prover's predicate-and-prove step).
// The name feeds the nonce evolution so distinct programs leave distinct
// histories, mirroring the gate path.
struct HostProgram {
  std::string name;
  std::function<Bytes(const Bytes&)> run;
};

inline FheCiphertext fhe_eval(const FhePublicKey& pk, const HostProgram& prog,
                              const FheCiphertext& ct) {
  require(ct.key_hi == pk.id_hi && ct.key_lo == pk.id_lo,
          "fhe_eval: ciphertext under a different key");
  require(prog.run != nullptr, "fhe_eval: empty program");
  return {pk.id_hi, pk.id_lo, prog.run(ct.payload),
          detail::evolve_nonce(ct.nonce, fnv1a64(prog.name))};
}

// Canonical re-encryption: the output depends only on (key, plaintext,
// fresh randomness), never on how the ciphertext was produced.
inline FheCiphertext fhe_refresh(const FhePublicKey& pk,
                                 const FheCiphertext& ct, Rng& rng) {
  require(ct.key_hi == pk.id_hi && ct.key_lo == pk.id_lo,
          "fhe_refresh: ciphertext under a different key");
  return {pk.id_hi, pk.id_lo, ct.payload, rng.next_u64()};
}

inline nlohmann::json fhe_ct_to_json(const FheCiphertext& ct) {
  std::string hex;
  static const char* k = "0123456789abcdef";
  for (uint8_t b : ct.payload) {
    hex.push_back(k[b >> 4]);
    hex.push_back(k[b & 0xf]);
  }
  return {{"key_hi", ct.key_hi},
          {"key_lo", ct.key_lo},
          {"payload", hex},
          {"nonce", ct.nonce}};
}

inline FheCiphertext fhe_ct_from_json(const nlohmann::json& j) {
  FheCiphertext ct;
  try {
    ct.key_hi = j.at("key_hi").get<uint64_t>();
    ct.key_lo = j.at("key_lo").get<uint64_t>();
    ct.nonce = j.at("nonce").get<uint64_t>();
    std::string hex = j.at("payload").get<std::string>();
    require(hex.size() % 2 == 0, "FheCiphertext: odd hex length");
    auto nib = [](char c) -> uint8_t {
      if (c >= '0' && c <= '9') return c - '0';
      if (c >= 'a' && c <= 'f') return c - 'a' + 10;
      fail("FheCiphertext: bad hex digit");
    };
    for (size_t i = 0; i < hex.size(); i += 2) {
      ct.payload.push_back(static_cast<uint8_t>((nib(hex[i]) << 4) |
                                                nib(hex[i + 1])));
    }
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("FheCiphertext: malformed JSON: ") + e.what());
  }
  return ct;
}

}  // namespace qnizk
