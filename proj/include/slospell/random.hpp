// Copyright 2026 The slospell Authors
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

#pragma once

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <random>

namespace slospell {

inline constexpr std::uint64_t kDefaultSeed = 20240509;

/// Anything that can answer the two questions the corruption engine asks.
/// Tests substitute scripted sources to force particular outcomes.
template <class R>
concept RandomSource = requires(R& r, std::size_t n, double p) {
  { r.index(n) } -> std::convertible_to<std::size_t>;
  { r.chance(p) } -> std::same_as<bool>;
};

/// Portable random stream: std::mt19937_64 is bit-specified by the standard,
/// and the two derived draws below avoid the implementation-defined
/// std::*_distribution classes, so output is identical on every platform.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  /// Independent stream for one sentence group.
  static RandomStream for_group(std::uint64_t seed, std::uint64_t group) {
    return RandomStream(seed ^ group);
  }

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, n); n must be positive.
  std::size_t index(std::size_t n) {
    if (n <= 1) return 0;
    const std::uint64_t bound = n;
    // Rejection sampling on the largest multiple of `bound`.
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound + 1) % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x > limit);
    return static_cast<std::size_t>(x % bound);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Bernoulli(p). Always consumes one draw so stream alignment does not
  /// depend on the probability values.
  bool chance(double p) { return unit() < p; }

 private:
  std::mt19937_64 engine_;
};

static_assert(RandomSource<RandomStream>);

}  // namespace slospell
