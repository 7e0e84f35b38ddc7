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

#include <set>

#include "qnizk/commitment.hpp"
#include "qnizk/nizk.hpp"

namespace qnizk {

struct Graph {
  uint32_t n = 0;
  std::vector<uint8_t> adj;  // n*n, symmetric, zero diagonal

  uint8_t edge(uint32_t u, uint32_t v) const {
    return adj[static_cast<size_t>(u) * n + v];
  }

  void validate() const {
    require(n >= 3, "Graph: need at least 3 vertices");
    require(adj.size() == static_cast<size_t>(n) * n, "Graph: adjacency size");
    for (uint32_t u = 0; u < n; ++u) {
      require(edge(u, u) == 0, "Graph: self loop");
      for (uint32_t v = 0; v < n; ++v) {
        require(edge(u, v) <= 1 && edge(u, v) == edge(v, u),
                "Graph: not a simple symmetric adjacency");
      }
    }
  }
};

inline Graph cycle_graph(uint32_t n) {
  Graph g;
  g.n = n;
  g.adj.assign(static_cast<size_t>(n) * n, 0);
  for (uint32_t i = 0; i < n; ++i) {
    uint32_t j = (i + 1) % n;
    g.adj[static_cast<size_t>(i) * n + j] = 1;
    g.adj[static_cast<size_t>(j) * n + i] = 1;
  }
  return g;
}

inline Graph path_graph(uint32_t n) {
  Graph g;
  g.n = n;
  g.adj.assign(static_cast<size_t>(n) * n, 0);
  for (uint32_t i = 0; i + 1 < n; ++i) {
    g.adj[static_cast<size_t>(i) * n + i + 1] = 1;
    g.adj[static_cast<size_t>(i + 1) * n + i] = 1;
  }
  return g;
}

inline nlohmann::json graph_to_json(const Graph& g) {
  nlohmann::json rows = nlohmann::json::array();
  for (uint32_t u = 0; u < g.n; ++u) {
    nlohmann::json row = nlohmann::json::array();
    for (uint32_t v = 0; v < g.n; ++v) {
      row.push_back(g.edge(u, v));
    }
    rows.push_back(row);
  }
  return {{"n", g.n}, {"adj", rows}};
}

inline Graph graph_from_json(const nlohmann::json& j) {
  Graph g;
  try {
    g.n = j.at("n").get<uint32_t>();
    for (const auto& row : j.at("adj")) {
      for (const auto& v : row) {
        g.adj.push_back(v.get<uint8_t>());
      }
    }
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("Graph: malformed JSON: ") + e.what());
  }
  g.validate();
  return g;
}

// Witness: the cycle as a vertex order; consecutive positions (cyclically)
// must be edges.
inline bool cycle_satisfies(const Graph& g, const std::vector<uint32_t>& order) {
  if (order.size() != g.n) {
    return false;
  }
  std::vector<bool> seen(g.n, false);
  for (uint32_t v : order) {
    if (v >= g.n || seen[v]) {
      return false;
    }
    seen[v] = true;
  }
  for (uint32_t i = 0; i < g.n; ++i) {
    if (!g.edge(order[i], order[(i + 1) % g.n])) {
      return false;
    }
  }
  return true;
}

inline Bytes ham_statement_bytes(const Graph& g) {
  return bytes_of(graph_to_json(g).dump());
}

inline Bytes ham_witness_bytes(const std::vector<uint32_t>& order) {
  nlohmann::json j = {{"order", order}};
  return bytes_of(j.dump());
}

// Fiat-Shamir'd Blum Hamiltonicity argument, t parallel repetitions. Per
// repetition the prover commits entrywise to the adjacency matrix of a
// random relabeled n-cycle K = pi(C_n). Challenge bit 0: reveal pi and every
// entry, showing K really is a relabeled cycle. Challenge bit 1: reveal a
// relabeling tau of the statement graph and open, as zeros, every entry of K
// at the non-edges of tau(G) — so the committed cycle runs inside tau(G).
// The challenge string is the hash of (salt, statement, all commitments);
// the simulator works backwards by fixing the challenge first, committing
// all-zero matrices on 1-branches, and programming the hash. Commitments for
// 1-branches open nowhere except non-edges, which the all-zero matrix
// satisfies, so simulated proofs verify without any witness.
class HamiltonicityBackend : public NizkBackend {
 public:
  HamiltonicityBackend(uint32_t t, bool programmable,
                       ComParams params = ComParams{})
      : t_(t),
        params_(params),
        hash_(std::make_shared<ProgrammableHash>(programmable)) {
    require(t_ >= 1 && t_ <= 256, "HamiltonicityBackend: repetitions");
  }

  std::string name() const override { return "hamiltonicity"; }

  NizkSetup setup(Rng& rng) override {
    ComKeyPair kp = com_gen(params_, rng);
    Bytes salt;
    for (int i = 0; i < 16; ++i) {
      salt.push_back(static_cast<uint8_t>(rng.below(256)));
    }
    nlohmann::json key = {{"pk", com_pk_to_json(kp.pk)},
                          {"salt", bytes_hex(salt)}};
    NizkSetup s;
    s.crs.backend = name();
    s.crs.key = bytes_of(key.dump());
    s.trapdoor = hash_->programmable() ? Bytes{1} : Bytes{};
    return s;
  }

  std::optional<NizkProof> prove(const NizkCrs& crs, const Bytes& stmt,
                                 const Bytes& witness, Rng& rng) override {
    ParsedCrs pc = parse_crs(crs);
    Graph g = graph_from_json(nlohmann::json::parse(string_of(stmt)));
    std::vector<uint32_t> order;
    try {
      order = nlohmann::json::parse(string_of(witness))
                  .at("order")
                  .get<std::vector<uint32_t>>();
    } catch (const nlohmann::json::exception&) {
      return std::nullopt;
    }
    if (!cycle_satisfies(g, order)) {
      return std::nullopt;
    }

    std::vector<Rep> reps(t_);
    for (Rep& rep : reps) {
      rep.pi = rng.permutation(g.n);
      rep.bits = cycle_bits(g.n, rep.pi);
      for (size_t idx = 0; idx < rep.bits.size(); ++idx) {
        rep.seeds.push_back(rng.next_u64());
        rep.coms.push_back(
            com_commit(pc.pk, {rep.bits[idx]}, rep.seeds[idx]));
      }
    }
    Bytes a = commitments_bytes(reps);
    BitVec e = challenge(pc.salt, stmt, a);

    nlohmann::json responses = nlohmann::json::array();
    for (uint32_t i = 0; i < t_; ++i) {
      const Rep& rep = reps[i];
      if (e[i] == 0) {
        nlohmann::json opens = nlohmann::json::array();
        for (size_t idx = 0; idx < rep.bits.size(); ++idx) {
          opens.push_back({{"bit", rep.bits[idx]},
                           {"seed", rep.seeds[idx]}});
        }
        responses.push_back({{"pi", rep.pi}, {"openings", opens}});
      } else {
        // tau maps the statement graph onto the committed cycle's labels.
        std::vector<uint32_t> tau(g.n);
        for (uint32_t pos = 0; pos < g.n; ++pos) {
          tau[order[pos]] = rep.pi[pos];
        }
        nlohmann::json opens = nlohmann::json::array();
        for (uint32_t u = 0; u < g.n; ++u) {
          for (uint32_t v = u + 1; v < g.n; ++v) {
            if (g.edge(u, v)) {
              continue;
            }
            size_t idx = pair_index(g.n, std::min(tau[u], tau[v]),
                                    std::max(tau[u], tau[v]));
            opens.push_back({{"u", std::min(tau[u], tau[v])},
                             {"v", std::max(tau[u], tau[v])},
                             {"seed", rep.seeds[idx]}});
          }
        }
        responses.push_back({{"tau", tau}, {"openings", opens}});
      }
    }

    NizkProof proof;
    proof.backend = name();
    proof.stmt = stmt;
    proof.body = assemble_body(g.n, reps, responses);
    proof.escrow = witness;
    return proof;
  }

  bool verify(const NizkCrs& crs, const Bytes& stmt,
              const NizkProof& proof) override {
    if (proof.backend != name() || proof.stmt != stmt) {
      return false;
    }
    try {
      ParsedCrs pc = parse_crs(crs);
      Graph g = graph_from_json(nlohmann::json::parse(string_of(stmt)));
      nlohmann::json body = nlohmann::json::parse(string_of(proof.body));
      if (body.at("n").get<uint32_t>() != g.n ||
          body.at("t").get<uint32_t>() != t_) {
        return false;
      }
      const nlohmann::json& coms_json = body.at("commitments");
      const nlohmann::json& responses = body.at("responses");
      if (coms_json.size() != t_ || responses.size() != t_) {
        return false;
      }
      size_t entries = static_cast<size_t>(g.n) * (g.n - 1) / 2;
      std::vector<std::vector<Commitment>> coms(t_);
      for (uint32_t i = 0; i < t_; ++i) {
        if (coms_json[i].size() != entries) {
          return false;
        }
        for (const auto& cj : coms_json[i]) {
          coms[i].push_back(com_from_json(cj));
        }
      }
      Bytes a = bytes_of(coms_json.dump());
      BitVec e = challenge(pc.salt, stmt, a);

      for (uint32_t i = 0; i < t_; ++i) {
        const nlohmann::json& resp = responses[i];
        if (e[i] == 0) {
          auto pi = resp.at("pi").get<std::vector<uint32_t>>();
          if (!is_permutation(pi, g.n)) {
            return false;
          }
          BitVec bits = cycle_bits(g.n, pi);
          const nlohmann::json& opens = resp.at("openings");
          if (opens.size() != entries) {
            return false;
          }
          for (size_t idx = 0; idx < entries; ++idx) {
            uint8_t bit = opens[idx].at("bit").get<uint8_t>();
            uint64_t seed = opens[idx].at("seed").get<uint64_t>();
            if (bit != bits[idx] ||
                !com_verify(pc.pk, coms[i][idx], {bit}, seed)) {
              return false;
            }
          }
        } else {
          auto tau = resp.at("tau").get<std::vector<uint32_t>>();
          if (!is_permutation(tau, g.n)) {
            return false;
          }
          // Non-edges of tau(G), which must all open to zero.
          std::set<size_t> needed;
          for (uint32_t u = 0; u < g.n; ++u) {
            for (uint32_t v = u + 1; v < g.n; ++v) {
              if (!g.edge(u, v)) {
                needed.insert(pair_index(g.n, std::min(tau[u], tau[v]),
                                         std::max(tau[u], tau[v])));
              }
            }
          }
          const nlohmann::json& opens = resp.at("openings");
          if (opens.size() != needed.size()) {
            return false;
          }
          for (const auto& o : opens) {
            uint32_t u = o.at("u").get<uint32_t>();
            uint32_t v = o.at("v").get<uint32_t>();
            uint64_t seed = o.at("seed").get<uint64_t>();
            if (u >= v || v >= g.n) {
              return false;
            }
            size_t idx = pair_index(g.n, u, v);
            if (needed.erase(idx) != 1 ||
                !com_verify(pc.pk, coms[i][idx], {0}, seed)) {
              return false;
            }
          }
          if (!needed.empty()) {
            return false;
          }
        }
      }
      return true;
    } catch (const std::exception&) {
      return false;
    }
  }

  NizkProof simulate(const NizkCrs& crs, const Bytes& trapdoor,
                     const Bytes& stmt, Rng& rng) override {
    require(!trapdoor.empty() && hash_->programmable(),
            "simulate: needs the programmable-hash trapdoor");
    ParsedCrs pc = parse_crs(crs);
    Graph g = graph_from_json(nlohmann::json::parse(string_of(stmt)));
    for (int attempt = 0; attempt < 16; ++attempt) {
      BitVec e = rng.bits(t_);
      std::vector<Rep> reps(t_);
      nlohmann::json responses = nlohmann::json::array();
      size_t entries = static_cast<size_t>(g.n) * (g.n - 1) / 2;
      for (uint32_t i = 0; i < t_; ++i) {
        Rep& rep = reps[i];
        if (e[i] == 0) {
          rep.pi = rng.permutation(g.n);
          rep.bits = cycle_bits(g.n, rep.pi);
        } else {
          rep.bits.assign(entries, 0);
        }
        for (size_t idx = 0; idx < entries; ++idx) {
          rep.seeds.push_back(rng.next_u64());
          rep.coms.push_back(
              com_commit(pc.pk, {rep.bits[idx]}, rep.seeds[idx]));
        }
        if (e[i] == 0) {
          nlohmann::json opens = nlohmann::json::array();
          for (size_t idx = 0; idx < entries; ++idx) {
            opens.push_back({{"bit", rep.bits[idx]},
                             {"seed", rep.seeds[idx]}});
          }
          responses.push_back({{"pi", rep.pi}, {"openings", opens}});
        } else {
          std::vector<uint32_t> tau = rng.permutation(g.n);
          nlohmann::json opens = nlohmann::json::array();
          for (uint32_t u = 0; u < g.n; ++u) {
            for (uint32_t v = u + 1; v < g.n; ++v) {
              if (g.edge(u, v)) {
                continue;
              }
              uint32_t a2 = std::min(tau[u], tau[v]);
              uint32_t b2 = std::max(tau[u], tau[v]);
              size_t idx = pair_index(g.n, a2, b2);
              opens.push_back(
                  {{"u", a2}, {"v", b2}, {"seed", rep.seeds[idx]}});
            }
          }
          responses.push_back({{"tau", tau}, {"openings", opens}});
        }
      }
      Bytes a = commitments_bytes(reps);
      Bytes input = pc.salt;
      input.insert(input.end(), stmt.begin(), stmt.end());
      input.insert(input.end(), a.begin(), a.end());
      Digest d{};
      for (auto& byte : d) {
        byte = static_cast<uint8_t>(rng.below(256));
      }
      for (uint32_t i = 0; i < t_; ++i) {
        uint8_t mask = static_cast<uint8_t>(1u << (7 - i % 8));
        if (e[i]) {
          d[i / 8] |= mask;
        } else {
          d[i / 8] &= static_cast<uint8_t>(~mask);
        }
      }
      if (!hash_->program(input, d)) {
        continue;
      }
      NizkProof proof;
      proof.backend = name();
      proof.stmt = stmt;
      proof.body = assemble_body(g.n, reps, responses);
      return proof;
    }
    fail("simulate: hash programming kept colliding");
  }

 private:
  struct ParsedCrs {
    ComPublicKey pk;
    Bytes salt;
  };

  struct Rep {
    std::vector<uint32_t> pi;
    BitVec bits;
    std::vector<uint64_t> seeds;
    std::vector<Commitment> coms;
  };

  static size_t pair_index(uint32_t n, uint32_t u, uint32_t v) {
    // Lexicographic over pairs u < v.
    return static_cast<size_t>(u) * n - static_cast<size_t>(u) * (u + 1) / 2 +
           (v - u - 1);
  }

  static bool is_permutation(const std::vector<uint32_t>& p, uint32_t n) {
    if (p.size() != n) {
      return false;
    }
    std::vector<bool> seen(n, false);
    for (uint32_t v : p) {
      if (v >= n || seen[v]) {
        return false;
      }
      seen[v] = true;
    }
    return true;
  }

  // Upper-triangle adjacency bits of the relabeled cycle pi(C_n).
  static BitVec cycle_bits(uint32_t n, const std::vector<uint32_t>& pi) {
    BitVec bits(static_cast<size_t>(n) * (n - 1) / 2, 0);
    for (uint32_t j = 0; j < n; ++j) {
      uint32_t u = pi[j];
      uint32_t v = pi[(j + 1) % n];
      bits[pair_index(n, std::min(u, v), std::max(u, v))] = 1;
    }
    return bits;
  }

  ParsedCrs parse_crs(const NizkCrs& crs) const {
    require(crs.backend == name(), "HamiltonicityBackend: wrong crs");
    nlohmann::json j = nlohmann::json::parse(string_of(crs.key));
    ParsedCrs pc;
    pc.pk = com_pk_from_json(j.at("pk"));
    pc.salt = bytes_from_hex(j.at("salt").get<std::string>());
    return pc;
  }

  static Bytes commitments_bytes(const std::vector<Rep>& reps) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Rep& rep : reps) {
      nlohmann::json row = nlohmann::json::array();
      for (const Commitment& c : rep.coms) {
        row.push_back(com_to_json(c));
      }
      arr.push_back(row);
    }
    return bytes_of(arr.dump());
  }

  BitVec challenge(const Bytes& salt, const Bytes& stmt, const Bytes& a) const {
    Bytes input = salt;
    input.insert(input.end(), stmt.begin(), stmt.end());
    input.insert(input.end(), a.begin(), a.end());
    Digest d = hash_->eval(input);
    BitVec e(t_);
    for (uint32_t i = 0; i < t_; ++i) {
      e[i] = (d[i / 8] >> (7 - i % 8)) & 1;
    }
    return e;
  }

  Bytes assemble_body(uint32_t n, const std::vector<Rep>& reps,
                      const nlohmann::json& responses) const {
    nlohmann::json coms = nlohmann::json::array();
    for (const Rep& rep : reps) {
      nlohmann::json row = nlohmann::json::array();
      for (const Commitment& c : rep.coms) {
        row.push_back(com_to_json(c));
      }
      coms.push_back(row);
    }
    nlohmann::json body = {{"n", n},
                           {"t", t_},
                           {"commitments", coms},
                           {"responses", responses}};
    return bytes_of(body.dump());
  }

  uint32_t t_;
  ComParams params_;
  std::shared_ptr<ProgrammableHash> hash_;
};

}  // namespace qnizk
