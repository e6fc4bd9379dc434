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

#include "qsched/counts.hpp"

#include <vector>

#include "qsched/error.hpp"
#include "qsched/rng.hpp"

namespace qsched {

void validate(const CountsDistribution& dist) {
  std::uint64_t sum = 0;
  for (const auto& [key, n] : dist.counts) {
    if (key.size() != dist.num_bits) {
      throw Error(ErrorCode::Validation, "key '" + key + "' has length " +
                                             std::to_string(key.size()) + ", expected " +
                                             std::to_string(dist.num_bits));
    }
    if (key.find_first_not_of("01") != std::string::npos) {
      throw Error(ErrorCode::Validation, "key '" + key + "' is not a bitstring");
    }
    sum += n;
  }
  if (sum != dist.total_shots) {
    throw Error(ErrorCode::Validation, "counts sum to " + std::to_string(sum) +
                                           " but total_shots is " +
                                           std::to_string(dist.total_shots));
  }
}

CountsDistribution make_counts(std::size_t num_bits,
                               const std::map<std::string, std::uint64_t>& counts) {
  CountsDistribution out;
  out.num_bits = num_bits;
  for (const auto& [key, n] : counts) {
    if (n == 0) continue;
    out.counts.emplace(key, n);
    out.total_shots += n;
  }
  validate(out);
  return out;
}

CountsDistribution downsample(const CountsDistribution& dist, std::uint64_t shots,
                              std::uint64_t seed) {
  if (shots >= dist.total_shots) return dist;
  // Sequential draws without replacement over the key order of the map.
  std::vector<std::pair<const std::string*, std::uint64_t>> remaining;
  for (const auto& [key, n] : dist.counts) remaining.emplace_back(&key, n);
  std::uint64_t left = dist.total_shots;
  rng::SplitMix64 gen(rng::mix(seed));
  CountsDistribution out;
  out.num_bits = dist.num_bits;
  for (std::uint64_t s = 0; s < shots; ++s) {
    std::uint64_t pick = gen.below(left);
    for (auto& [key, n] : remaining) {
      if (pick < n) {
        --n;
        ++out.counts[*key];
        break;
      }
      pick -= n;
    }
    --left;
  }
  out.total_shots = shots;
  return out;
}

std::string most_frequent(const CountsDistribution& dist) {
  std::string best;
  std::uint64_t best_n = 0;
  for (const auto& [key, n] : dist.counts) {
    if (n > best_n) {
      best = key;
      best_n = n;
    }
  }
  return best;
}

}  // namespace qsched
