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

#include <map>
#include <span>
#include <string>
#include <string_view>

#include "qsched/composer.hpp"
#include "qsched/counts.hpp"

namespace qsched {

// Returns characters [clbit_offset, clbit_offset + clbit_count) of `key`.
// `composed_bits` is the width every key must have; Error(LengthMismatch)
// otherwise or when the window does not fit inside it.
std::string slice_key(std::string_view key, const Placement& placement,
                      std::size_t composed_bits);

// Marginalises the composed histogram onto each placement's clbit window.
// Counts stay integral and each output keeps composed.total_shots.
std::map<JobId, CountsDistribution> demux(const CountsDistribution& composed,
                                          std::span<const Placement> placements);

}  // namespace qsched
