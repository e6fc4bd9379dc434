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

#include <chrono>
#include <compare>
#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include "qsched/circuit.hpp"
#include "qsched/counts.hpp"

namespace qsched {

struct JobId {
  std::string value;
  auto operator<=>(const JobId&) const = default;
};

struct BatchId {
  std::string value;
  auto operator<=>(const BatchId&) const = default;
};

// 128 random bits from std::random_device, rendered as 32 lowercase hex digits.
JobId new_job_id();
BatchId new_batch_id();

enum class JobStatus { Queued, Scheduled, Running, Done, Failed };

std::string_view to_string(JobStatus status) noexcept;
std::optional<JobStatus> parse_job_status(std::string_view text) noexcept;

// Allowed edges: QUEUED->SCHEDULED->RUNNING->(DONE|FAILED) and nothing else.
bool can_transition(JobStatus from, JobStatus to) noexcept;

using TimePoint = std::chrono::system_clock::time_point;

std::int64_t to_unix_ms(TimePoint t) noexcept;
TimePoint from_unix_ms(std::int64_t ms) noexcept;

class Clock {
 public:
  virtual ~Clock() = default;
  virtual TimePoint now() const = 0;
};

class SystemClock final : public Clock {
 public:
  TimePoint now() const override { return std::chrono::system_clock::now(); }
};

// Deterministic clock for tests and simulations; only moves when told to.
class ManualClock final : public Clock {
 public:
  explicit ManualClock(TimePoint start = TimePoint{}) : now_(start) {}

  TimePoint now() const override {
    std::lock_guard lock(mu_);
    return now_;
  }
  void advance(std::chrono::milliseconds step) {
    std::lock_guard lock(mu_);
    now_ += step;
  }

 private:
  mutable std::mutex mu_;
  TimePoint now_;
};

struct QuantumJob {
  JobId id;
  Circuit circuit;
  std::uint64_t requested_shots = 1;
  JobStatus status = JobStatus::Queued;
  TimePoint submitted_at{};
  std::optional<BatchId> batch_id;
  std::optional<std::string> error;

  // Throws Error(Internal) on an edge can_transition() rejects.
  void transition(JobStatus next);
};

struct JobTimings {
  std::optional<TimePoint> enqueued;
  std::optional<TimePoint> dispatched;
  std::optional<TimePoint> completed;
};

// The persisted view of a job. `result` is present iff status is DONE.
struct JobRecord {
  QuantumJob job;
  std::optional<CountsDistribution> result;
  JobTimings timings;
};

}  // namespace qsched
