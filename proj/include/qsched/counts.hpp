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

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>

namespace qsched {

// Histogram of measured bitstrings. Character i of every key is clbit i, so the
// leftmost character is clbit 0.
struct CountsDistribution {
  std::size_t num_bits = 0;
  std::map<std::string, std::uint64_t> counts;
  std::uint64_t total_shots = 0;

  friend bool operator==(const CountsDistribution&, const CountsDistribution&) = default;
};

// Throws Error(Validation) if a key has the wrong length or a non-binary
// character, or if the counts do not sum to total_shots.
void validate(const CountsDistribution& dist);

// Builds a distribution from raw counts, dropping zero entries and deriving
// total_shots.
CountsDistribution make_counts(std::size_t num_bits,
                               const std::map<std::string, std::uint64_t>& counts);

// Draws `shots` outcomes without replacement from `dist` (multivariate
// hypergeometric). Returns `dist` unchanged when shots >= total_shots.
CountsDistribution downsample(const CountsDistribution& dist, std::uint64_t shots,
                              std::uint64_t seed);

// Most frequent key; ties broken by the lexicographically smallest key.
std::string most_frequent(const CountsDistribution& dist);

}  // namespace qsched
