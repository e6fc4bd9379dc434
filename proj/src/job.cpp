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

#include "qsched/job.hpp"

#include <array>
#include <random>

#include "qsched/error.hpp"

namespace qsched {
namespace {

std::string random_hex128() {
  static thread_local std::random_device device;
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(32);
  for (int word = 0; word < 4; ++word) {
    std::uint32_t bits = device();
    for (int nibble = 0; nibble < 8; ++nibble) {
      out.push_back(kHex[bits & 0xF]);
      bits >>= 4;
    }
  }
  return out;
}

constexpr std::array<std::string_view, 5> kStatusNames{"QUEUED", "SCHEDULED", "RUNNING",
                                                       "DONE", "FAILED"};

}  // namespace

JobId new_job_id() { return JobId{random_hex128()}; }
BatchId new_batch_id() { return BatchId{random_hex128()}; }

std::string_view to_string(JobStatus status) noexcept {
  return kStatusNames[static_cast<std::size_t>(status)];
}

std::optional<JobStatus> parse_job_status(std::string_view text) noexcept {
  for (std::size_t i = 0; i < kStatusNames.size(); ++i) {
    if (kStatusNames[i] == text) return static_cast<JobStatus>(i);
  }
  return std::nullopt;
}

bool can_transition(JobStatus from, JobStatus to) noexcept {
  switch (from) {
    case JobStatus::Queued: return to == JobStatus::Scheduled;
    case JobStatus::Scheduled: return to == JobStatus::Running;
    case JobStatus::Running: return to == JobStatus::Done || to == JobStatus::Failed;
    case JobStatus::Done:
    case JobStatus::Failed: return false;
  }
  return false;
}

std::int64_t to_unix_ms(TimePoint t) noexcept {
  return std::chrono::duration_cast<std::chrono::milliseconds>(t.time_since_epoch()).count();
}

TimePoint from_unix_ms(std::int64_t ms) noexcept {
  return TimePoint{std::chrono::duration_cast<TimePoint::duration>(std::chrono::milliseconds(ms))};
}

void QuantumJob::transition(JobStatus next) {
  if (!can_transition(status, next)) {
    throw Error(ErrorCode::Internal, "job " + id.value + ": illegal transition " +
                                         std::string(to_string(status)) + " -> " +
                                         std::string(to_string(next)));
  }
  status = next;
}

}  // namespace qsched
