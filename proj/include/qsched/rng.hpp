// Copyright 2026 The qsched Authors
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

#include <cstdint>

namespace qsched::rng {

// SplitMix64 (Steele, Lea, Flood 2014). Every random draw in the library comes
// from this generator so sampled counts are reproducible on any platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 bits of resolution.
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound) by rejection; bound must be > 0.
  std::uint64_t below(std::uint64_t bound) noexcept {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % bound;
  }

 private:
  std::uint64_t state_;
};

// The SplitMix64 output function applied to a single word.
constexpr std::uint64_t mix(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Seed of child stream `index` under `seed` with purpose tag `tag`:
// mix(mix(seed ^ tag) + index). Distinct (tag, index) pairs give independent
// streams, which is how per-shot and per-run streams are split.
constexpr std::uint64_t derive(std::uint64_t seed, std::uint64_t tag,
                               std::uint64_t index) noexcept {
  return mix(mix(seed ^ tag) + index);
}

// Purpose tags.
inline constexpr std::uint64_t kOutcomeStream = 0x6f7574636f6d6500ULL;  // "outcome"
inline constexpr std::uint64_t kNoiseStream = 0x6e6f697365000000ULL;    // "noise"
inline constexpr std::uint64_t kReadoutStream = 0x726561646f757400ULL;  // "readout"
inline constexpr std::uint64_t kRunStream = 0x72756e0000000000ULL;      // "run"
inline constexpr std::uint64_t kBatchStream = 0x6261746368000000ULL;    // "batch"

}  // namespace qsched::rng
