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

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "qnizk/error.hpp"

namespace qnizk {

// splitmix64 step; also used as a one-shot mixer for stream derivation.
inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline uint64_t fnv1a64(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (char c : s) {
    h ^= static_cast<uint8_t>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

// Deterministic PRNG. Every randomized routine in the library takes one of
// these explicitly; reruns from the same root seed reproduce byte-identical
// artifacts. std::uniform_int_distribution is deliberately not used anywhere
// (its draw algorithm is implementation-defined); all shaping is done here.
class Rng {
 public:
  explicit Rng(uint64_t seed) : seed_(seed), eng_(seed) {}

  uint64_t seed() const { return seed_; }

  uint64_t next_u64() { return eng_(); }

  // Unbiased draw from [0, n) by rejection.
  uint64_t below(uint64_t n) {
    require(n > 0, "Rng::below: n must be positive");
    uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    for (;;) {
      uint64_t r = next_u64();
      if (r >= threshold) {
        return r % n;
      }
    }
  }

  uint8_t bit() { return static_cast<uint8_t>(next_u64() >> 63); }

  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  std::vector<uint8_t> bits(size_t n) {
    std::vector<uint8_t> out(n);
    for (size_t i = 0; i < n; ++i) {
      out[i] = bit();
    }
    return out;
  }

  // Fisher-Yates; uniform over S_n.
  std::vector<uint32_t> permutation(uint32_t n) {
    std::vector<uint32_t> p(n);
    for (uint32_t i = 0; i < n; ++i) {
      p[i] = i;
    }
    for (uint32_t i = n; i > 1; --i) {
      uint32_t j = static_cast<uint32_t>(below(i));
      std::swap(p[i - 1], p[j]);
    }
    return p;
  }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = below(i);
      std::swap(v[i - 1], v[j]);
    }
  }

  // Child stream determined by (root seed, label, index) only; independent of
  // how many draws the parent has made.
  Rng derive(std::string_view label, uint64_t index = 0) const {
    uint64_t st = seed_ ^ 0x632be59bd9b4e019ull;
    st ^= fnv1a64(label);
    uint64_t a = splitmix64(st);
    st ^= (index + 1) * 0xff51afd7ed558ccdull;
    uint64_t b = splitmix64(st);
    return Rng(a ^ ((b << 1) | (b >> 63)));
  }

 private:
  uint64_t seed_;
  std::mt19937_64 eng_;
};

}  // namespace qnizk
