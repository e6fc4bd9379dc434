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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qsched/counts.hpp"
#include "qsched/job.hpp"

namespace qsched {

// sqrt(1 - sum_k sqrt(p_k q_k)) over the union of keys, evaluated as
// sqrt(0.5 * sum_k (sqrt(p_k) - sqrt(q_k))^2) so that equal inputs give 0.
// Errors: WidthMismatch, EmptyDistribution.
double hellinger(const CountsDistribution& p, const CountsDistribution& q);

// W1 between the two distributions with each key read as an unsigned integer
// (clbit 0 is the most significant character), divided by 2^n - 1.
// Errors: WidthMismatch, EmptyDistribution, InvalidArgument (n = 0 or n > 63).
double wasserstein_normalized(const CountsDistribution& p, const CountsDistribution& q);

inline constexpr std::string_view kWassersteinEmbedding =
    "integer embedding, clbit 0 most significant, W1 / (2^n - 1)";

struct RunPair {
  JobId job_id;
  std::string name;
  std::size_t width = 0;
  std::uint64_t shots = 0;
  CountsDistribution individual;
  CountsDistribution scheduled;
};

struct JobDistance {
  JobId job_id;
  std::string name;
  std::size_t width = 0;
  std::uint64_t shots = 0;
  double hellinger = 0.0;
  double wasserstein = 0.0;
};

struct DistanceReport {
  std::vector<JobDistance> per_job;
  // Arithmetic mean of the per-job distances, times 100.
  double mean_hellinger_pct = 0.0;
  double mean_wasserstein_pct = 0.0;
  std::string wasserstein_embedding{kWassersteinEmbedding};
};

// Errors from a pair are rethrown with the job id prepended to the message and
// stored in detail(). An empty list is Error(EmptyDistribution).
DistanceReport compare_runs(std::span<const RunPair> pairs);

// CSV with header `job_id,name,width,shots,hellinger,wasserstein`, one row per
// job and a final row `summary,mean_pct,<total width>,<shots>,<mean H %>,<mean W %>`.
// Reals are printed with ten decimals.
std::string report_csv(const DistanceReport& report);

}  // namespace qsched
