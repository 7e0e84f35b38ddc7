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

#ifndef QNIZK_STATS_HPP_
#define QNIZK_STATS_HPP_

#include <cmath>
#include <cstdint>
#include <vector>

#include "qnizk/error.hpp"

namespace qnizk {

struct WilsonInterval {
  double rate = 0;
  double lo = 0;
  double hi = 0;
};

// Wilson score interval at 95% coverage. Behaves sanely at the endpoints,
// unlike the normal approximation.
inline WilsonInterval wilson95(uint64_t hits, uint64_t trials) {
  require(trials >= 1, "wilson95: no trials");
  require(hits <= trials, "wilson95: hits exceed trials");
  const double z = 1.959963984540054;
  double n = static_cast<double>(trials);
  double p = static_cast<double>(hits) / n;
  double z2 = z * z;
  double denom = 1.0 + z2 / n;
  double center = (p + z2 / (2 * n)) / denom;
  double half = z / denom * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n));
  WilsonInterval w;
  w.rate = p;
  w.lo = center - half;
  w.hi = center + half;
  if (w.lo < 0) {
    w.lo = 0;
  }
  if (w.hi > 1) {
    w.hi = 1;
  }
  return w;
}

inline double binomial_sigma(double p, uint64_t trials) {
  require(trials >= 1, "binomial_sigma: no trials");
  return std::sqrt(p * (1 - p) / static_cast<double>(trials));
}

// Fixed-width histogram over [0, 1]; the last bin is closed on the right.
inline std::vector<uint64_t> unit_histogram(const std::vector<double>& xs,
                                            uint32_t bins) {
  require(bins >= 1, "unit_histogram: no bins");
  std::vector<uint64_t> h(bins, 0);
  for (double x : xs) {
    double clamped = x < 0 ? 0 : (x > 1 ? 1 : x);
    auto b = static_cast<uint32_t>(clamped * bins);
    if (b == bins) {
      b = bins - 1;
    }
    h[b] += 1;
  }
  return h;
}

}  // namespace qnizk

#endif  // QNIZK_STATS_HPP_
