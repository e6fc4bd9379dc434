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

#include "qsched/unscheduler.hpp"

#include "qsched/error.hpp"

namespace qsched {

std::string slice_key(std::string_view key, const Placement& placement,
                      std::size_t composed_bits) {
  if (key.size() != composed_bits) {
    throw Error(ErrorCode::LengthMismatch, "key of length " + std::to_string(key.size()) +
                                               " does not match composed width " +
                                               std::to_string(composed_bits));
  }
  if (placement.clbit_offset + placement.clbit_count > composed_bits) {
    throw Error(ErrorCode::LengthMismatch,
                "placement window for job " + placement.job_id.value +
                    " exceeds composed width " + std::to_string(composed_bits));
  }
  return std::string(key.substr(placement.clbit_offset, placement.clbit_count));
}

std::map<JobId, CountsDistribution> demux(const CountsDistribution& composed,
                                          std::span<const Placement> placements) {
  std::size_t width = 0;
  for (const Placement& p : placements) width += p.clbit_count;
  if (width != composed.num_bits) {
    throw Error(ErrorCode::LengthMismatch,
                "placements cover " + std::to_string(width) + " clbits but results have " +
                    std::to_string(composed.num_bits));
  }
  std::map<JobId, CountsDistribution> out;
  for (const Placement& p : placements) {
    CountsDistribution& part = out[p.job_id];
    part.num_bits = p.clbit_count;
    part.total_shots = composed.total_shots;
    for (const auto& [key, n] : composed.counts) {
      part.counts[slice_key(key, p, composed.num_bits)] += n;
    }
  }
  return out;
}

}  // namespace qsched
