//
// Copyright 2026 The bncsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef BNC_RNG_H_
#define BNC_RNG_H_

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace bnc {

// SplitMix64 finalizer. Used both as a seed deriver and as the per-row hash
// behind contributor-set digests.
inline uint64_t Mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Derives an independent child seed from a master seed and a stream index,
// so parallel trials get decorrelated deterministic streams.
inline uint64_t DeriveSeed(uint64_t master, uint64_t stream) {
  return Mix64(master ^ Mix64(stream + 0x5851f42d4c957f2dULL));
}

// Thin deterministic wrapper around mt19937_64. All sampling goes through
// explicit arithmetic on 64-bit draws so results do not depend on the
// standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t NextU64() { return engine_(); }

  // Uniform double in [0, 1) with 53 random bits.
  double NextDouble() {
    return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound), bound > 0. Rejection sampling keeps the
  // draw exactly uniform.
  uint64_t NextBelow(uint64_t bound) {
    uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      uint64_t v = NextU64();
      if (v >= threshold) return v % bound;
    }
  }

  // Uniform integer in [lo, hi] inclusive.
  int64_t NextInt(int64_t lo, int64_t hi) {
    return lo + static_cast<int64_t>(
                    NextBelow(static_cast<uint64_t>(hi - lo) + 1));
  }

  // Standard normal via Box-Muller; implemented here so synthetic datasets
  // are reproducible across standard libraries.
  double NextGaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = NextDouble();
    } while (u1 <= 0.0);
    double u2 = NextDouble();
    double radius = std::sqrt(-2.0 * std::log(u1));
    double angle = 2.0 * M_PI * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  // Robert Floyd's algorithm: k distinct values from [1, n], order not
  // meaningful; output is sorted for determinism.
  std::vector<uint64_t> SampleDistinct(uint64_t n, uint64_t k);

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace bnc

#endif  // BNC_RNG_H_
