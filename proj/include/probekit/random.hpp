// Copyright 2026 The probe-kit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PROBEKIT_RANDOM_HPP_
#define PROBEKIT_RANDOM_HPP_

#include <cstdint>
#include <random>

namespace probekit {

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Deterministic random stream. Uniform doubles are derived from raw 64-bit
// draws rather than std::uniform_real_distribution so that traces replay
// bit-for-bit across standard library implementations.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  // Independent stream for (seed, index), e.g. one per Monte Carlo trial.
  static RandomStream split(std::uint64_t seed, std::uint64_t index) {
    return RandomStream(splitmix64(seed) ^ splitmix64(~index));
  }

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  bool bernoulli(double p) { return uniform() < p; }

  // Uniform integer in [0, n). Uses rejection to stay unbiased.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return v % n;
  }
  int below(int n) {
    return static_cast<int>(below(static_cast<std::uint64_t>(n)));
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace probekit

#endif  // PROBEKIT_RANDOM_HPP_
