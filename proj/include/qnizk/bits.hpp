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
#include <string>
#include <string_view>
#include <vector>

#include "qnizk/error.hpp"

namespace qnizk {

// Bit vectors hold one bit per byte, value 0 or 1. Index 0 is the most
// significant position wherever a vector is read as an integer.
using BitVec = std::vector<uint8_t>;

inline BitVec xored(const BitVec& a, const BitVec& b) {
  require(a.size() == b.size(), "xored: length mismatch");
  BitVec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    out[i] = a[i] ^ b[i];
  }
  return out;
}

inline uint32_t weight(const BitVec& a) {
  uint32_t w = 0;
  for (uint8_t b : a) {
    w += b;
  }
  return w;
}

inline uint8_t parity(const BitVec& a) { return weight(a) & 1; }

inline uint8_t dot2(const BitVec& a, const BitVec& b) {
  require(a.size() == b.size(), "dot2: length mismatch");
  uint32_t acc = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    acc += a[i] & b[i];
  }
  return acc & 1;
}

inline BitVec concat(const BitVec& a, const BitVec& b) {
  BitVec out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

inline BitVec slice(const BitVec& a, size_t lo, size_t len) {
  require(lo + len <= a.size(), "slice: out of range");
  return BitVec(a.begin() + lo, a.begin() + lo + len);
}

inline uint64_t bits_to_uint(const BitVec& a) {
  require(a.size() <= 64, "bits_to_uint: too wide");
  uint64_t v = 0;
  for (uint8_t b : a) {
    v = (v << 1) | b;
  }
  return v;
}

inline BitVec uint_to_bits(uint64_t v, uint32_t width) {
  BitVec out(width);
  for (uint32_t i = 0; i < width; ++i) {
    out[i] = (v >> (width - 1 - i)) & 1;
  }
  return out;
}

// Hex packing reads the vector as a big-endian integer; the leading nibble is
// zero-padded when the length is not a multiple of 4.
inline std::string to_hex(const BitVec& a) {
  static const char* digits = "0123456789abcdef";
  size_t nhex = (a.size() + 3) / 4;
  std::string out(nhex, '0');
  size_t pad = nhex * 4 - a.size();
  for (size_t h = 0; h < nhex; ++h) {
    uint32_t nib = 0;
    for (size_t k = 0; k < 4; ++k) {
      size_t pos = h * 4 + k;
      uint8_t bit = 0;
      if (pos >= pad) {
        bit = a[pos - pad];
      }
      nib = (nib << 1) | bit;
    }
    out[h] = digits[nib];
  }
  return out;
}

inline BitVec from_hex(std::string_view s, size_t nbits) {
  require(s.size() * 4 >= nbits, "from_hex: string too short");
  require(s.size() == (nbits + 3) / 4, "from_hex: string too long");
  BitVec all(s.size() * 4);
  for (size_t h = 0; h < s.size(); ++h) {
    char c = s[h];
    uint32_t nib;
    if (c >= '0' && c <= '9') {
      nib = c - '0';
    } else if (c >= 'a' && c <= 'f') {
      nib = 10 + (c - 'a');
    } else if (c >= 'A' && c <= 'F') {
      nib = 10 + (c - 'A');
    } else {
      fail("from_hex: invalid digit");
    }
    for (size_t k = 0; k < 4; ++k) {
      all[h * 4 + k] = (nib >> (3 - k)) & 1;
    }
  }
  size_t pad = all.size() - nbits;
  for (size_t i = 0; i < pad; ++i) {
    require(all[i] == 0, "from_hex: nonzero pad bits");
  }
  return BitVec(all.begin() + pad, all.end());
}

}  // namespace qnizk
