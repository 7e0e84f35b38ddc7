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

#include <openssl/evp.h>

#include <array>
#include <map>
#include <string>
#include <string_view>

#include "qnizk/bits.hpp"
#include "qnizk/error.hpp"

namespace qnizk {

// Raw byte strings (as opposed to BitVec, whose entries are single bits).
using Bytes = std::vector<uint8_t>;

using Digest = std::array<uint8_t, 32>;

inline Bytes bytes_of(std::string_view s) {
  return Bytes(s.begin(), s.end());
}

inline std::string string_of(const Bytes& b) {
  return std::string(b.begin(), b.end());
}

inline Digest sha256(const Bytes& data) {
  Digest out{};
  unsigned int len = 0;
  require(EVP_Digest(data.data(), data.size(), out.data(), &len,
                     EVP_sha256(), nullptr) == 1 &&
              len == out.size(),
          "sha256: digest failure");
  return out;
}

inline uint64_t hash64(const Bytes& data) {
  Digest d = sha256(data);
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) {
    v = (v << 8) | d[i];
  }
  return v;
}

inline std::string digest_hex(const Digest& d) {
  static const char* k = "0123456789abcdef";
  std::string s;
  for (uint8_t b : d) {
    s.push_back(k[b >> 4]);
    s.push_back(k[b & 0xf]);
  }
  return s;
}

inline std::string bytes_hex(const Bytes& data) {
  static const char* k = "0123456789abcdef";
  std::string s;
  for (uint8_t b : data) {
    s.push_back(k[b >> 4]);
    s.push_back(k[b & 0xf]);
  }
  return s;
}

inline Bytes bytes_from_hex(std::string_view s) {
  require(s.size() % 2 == 0, "bytes_from_hex: odd length");
  auto nibble = [](char c) -> uint8_t {
    if (c >= '0' && c <= '9') return static_cast<uint8_t>(c - '0');
    if (c >= 'a' && c <= 'f') return static_cast<uint8_t>(10 + c - 'a');
    if (c >= 'A' && c <= 'F') return static_cast<uint8_t>(10 + c - 'A');
    fail("bytes_from_hex: invalid digit");
  };
  Bytes out(s.size() / 2);
  for (size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<uint8_t>((nibble(s[2 * i]) << 4) | nibble(s[2 * i + 1]));
  }
  return out;
}

// SHA-256 in production mode; in programmable mode individual input points
// can be overridden, which is exactly the capability the proof simulator
// needs. The override table is session-local and single-writer.
class ProgrammableHash {
 public:
  explicit ProgrammableHash(bool programmable = false)
      : programmable_(programmable) {}

  bool programmable() const { return programmable_; }

  Digest eval(const Bytes& input) const {
    auto it = table_.find(input);
    if (it != table_.end()) {
      return it->second;
    }
    return sha256(input);
  }

  // Returns false if the point is already pinned to a different value (the
  // caller retries with fresh randomness).
  bool program(const Bytes& input, const Digest& output) {
    require(programmable_, "ProgrammableHash: not in programmable mode");
    auto it = table_.find(input);
    if (it != table_.end()) {
      return it->second == output;
    }
    table_[input] = output;
    return true;
  }

 private:
  bool programmable_;
  std::map<Bytes, Digest> table_;
};

}  // namespace qnizk
