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
#include <memory>
#include <optional>

#include "json.hpp"
#include "qnizk/hash.hpp"
#include "qnizk/rng.hpp"

namespace qnizk {

// Statements and witnesses travel as opaque canonical byte strings; each
// backend owns its encoding.
struct NizkCrs {
  std::string backend;
  Bytes key;
};

struct NizkProof {
  std::string backend;
  Bytes stmt;  // the statement the proof binds to
  Bytes body;
  // Side channel for the desk-scale knowledge extractor: the attestation
  // backend parks the witness here. Never serialized, never compared, and
  // empty in simulated proofs; the wire format is identical with or without
  // it.
  Bytes escrow;
};

struct NizkSetup {
  NizkCrs crs;
  Bytes trapdoor;  // simulation trapdoor; empty when the backend needs none
};

class NizkBackend {
 public:
  virtual ~NizkBackend() = default;
  virtual std::string name() const = 0;
  virtual NizkSetup setup(Rng& rng) = 0;
  // nullopt = the prover refuses because the witness fails the relation.
  virtual std::optional<NizkProof> prove(const NizkCrs& crs, const Bytes& stmt,
                                         const Bytes& witness, Rng& rng) = 0;
  virtual bool verify(const NizkCrs& crs, const Bytes& stmt,
                      const NizkProof& proof) = 0;
  // Straight-line: consumes the statement and the setup trapdoor only.
  virtual NizkProof simulate(const NizkCrs& crs, const Bytes& trapdoor,
                             const Bytes& stmt, Rng& rng) = 0;
};

inline nlohmann::json nizk_proof_to_json(const NizkProof& p) {
  return {{"backend", p.backend},
          {"stmt", string_of(p.stmt)},
          {"body", string_of(p.body)}};
}

inline NizkProof nizk_proof_from_json(const nlohmann::json& j) {
  NizkProof p;
  try {
    p.backend = j.at("backend").get<std::string>();
    p.stmt = bytes_of(j.at("stmt").get<std::string>());
    p.body = bytes_of(j.at("body").get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("NizkProof: malformed JSON: ") + e.what());
  }
  return p;
}

// Host-checked relation over (statement, witness) byte strings.
using NizkRelation = std::function<bool(const Bytes&, const Bytes&)>;

// Minimal backend used by the protocol by default: the proof is a keyed tag
// over the statement, issued only after the prover's relation check passes.
// Simulated proofs are bit-identical to honest ones (the tag is a function
// of the statement alone), so the zero-knowledge contract holds exactly; the
// extractor hook is the escrow field above.
class AttestationBackend : public NizkBackend {
 public:
  explicit AttestationBackend(NizkRelation relation)
      : relation_(std::move(relation)) {}

  std::string name() const override { return "attestation"; }

  NizkSetup setup(Rng& rng) override {
    NizkSetup s;
    s.crs.backend = name();
    for (int i = 0; i < 32; ++i) {
      s.crs.key.push_back(static_cast<uint8_t>(rng.below(256)));
    }
    return s;
  }

  std::optional<NizkProof> prove(const NizkCrs& crs, const Bytes& stmt,
                                 const Bytes& witness, Rng&) override {
    require(relation_ != nullptr, "AttestationBackend: no relation");
    if (!relation_(stmt, witness)) {
      return std::nullopt;
    }
    NizkProof p;
    p.backend = name();
    p.stmt = stmt;
    p.body = tag(crs, stmt);
    p.escrow = witness;
    return p;
  }

  bool verify(const NizkCrs& crs, const Bytes& stmt,
              const NizkProof& proof) override {
    return proof.backend == name() && proof.stmt == stmt &&
           proof.body == tag(crs, stmt);
  }

  NizkProof simulate(const NizkCrs& crs, const Bytes&, const Bytes& stmt,
                     Rng&) override {
    NizkProof p;
    p.backend = name();
    p.stmt = stmt;
    p.body = tag(crs, stmt);
    return p;
  }

 private:
  static Bytes tag(const NizkCrs& crs, const Bytes& stmt) {
    Bytes in = crs.key;
    in.insert(in.end(), stmt.begin(), stmt.end());
    Digest d = sha256(in);
    return bytes_of(digest_hex(d));
  }

  NizkRelation relation_;
};

}  // namespace qnizk
