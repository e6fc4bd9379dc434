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

#include <json.hpp>

#include "qsched/counts.hpp"
#include "qsched/job.hpp"
#include "qsched/simulator.hpp"

namespace qsched {

// {"num_bits": n, "total_shots": t, "counts": {"0101": 12, ...}}
nlohmann::json counts_to_json(const CountsDistribution& dist);
// Accepts the object above, or a bare {"key": count} map (num_bits taken from
// the keys). Throws Error(Validation) on malformed input.
CountsDistribution counts_from_json(const nlohmann::json& j);

nlohmann::json descriptor_to_json(const BackendDescriptor& d);

// Public view of a job as served by GET /results/{id}.
nlohmann::json record_to_json(const JobRecord& record);

}  // namespace qsched
