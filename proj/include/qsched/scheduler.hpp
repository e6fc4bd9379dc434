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
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "qsched/composer.hpp"
#include "qsched/job.hpp"
#include "qsched/journal.hpp"
#include "qsched/simulator.hpp"

namespace qsched {

struct SchedulerConfig {
  // Qubits available for one composed circuit.
  std::size_t capacity = 127;
  std::chrono::milliseconds cycle_duration{5000};
  // Every composed circuit runs with this many shots, whatever the jobs asked for.
  std::uint64_t composed_shots = 10000;
  std::string backend = "statevector_simulator";
  // When set, no new batch is dispatched while another is still in flight.
  bool strict_serial = false;
  // Base seed for batch executions; batch b uses derive(seed, kBatchStream, b).
  std::optional<std::uint64_t> seed;
  // Finished jobs older than this are dropped; zero keeps them forever.
  std::chrono::seconds result_ttl{0};

  // Throws Error(InvalidArgument) on capacity, shots or cycle of zero.
  void validate() const;
};

struct DispatchDecision {
  enum class Kind { Wait, Dispatch };
  Kind kind = Kind::Wait;
  std::optional<ComposedCircuit> batch;
  // Queued jobs the scan passed over; they stay at the front of the queue.
  std::vector<JobId> skipped;
};

struct QueueEntry {
  JobId id;
  std::string name;
  std::size_t width = 0;
  std::size_t position = 0;
};

// The job store plus FIFO queue. enqueue() may be called from any thread;
// run_cycle() and execute_batch() belong to a single dispatcher.
class Scheduler {
 public:
  Scheduler(SchedulerConfig config, std::shared_ptr<const Backend> backend,
            std::shared_ptr<const Clock> clock, std::shared_ptr<Journal> journal = nullptr);

  const SchedulerConfig& config() const noexcept { return config_; }
  const Backend& backend() const noexcept { return *backend_; }
  const Clock& clock() const noexcept { return *clock_; }

  // min(configured capacity, backend max_qubits).
  std::size_t effective_capacity() const noexcept { return capacity_; }

  // Normalises measurements, validates and appends the job. The submission is
  // journaled before the id is returned. Errors: TooWide, InvalidShots,
  // Validation.
  JobId enqueue(Circuit circuit, std::uint64_t requested_shots);

  // Dispatches when the queue is non-empty and either nothing arrived since
  // the previous cycle or the batch is saturated (no capacity left, or some
  // queued job did not fit). Selected jobs become SCHEDULED under one batch id.
  DispatchDecision run_cycle(TimePoint now);

  // Runs the composed circuit with composed_shots, demultiplexes and moves
  // every member to DONE, or to FAILED with the backend's message. Returns the
  // per-job counts (empty on failure).
  std::map<JobId, CountsDistribution> execute_batch(const ComposedCircuit& batch);

  std::optional<JobRecord> find(const JobId& id) const;
  std::vector<QueueEntry> queue_snapshot() const;
  std::vector<JobRecord> records() const;
  std::size_t queue_size() const;
  std::size_t in_flight() const;

  // Loads replayed records; QUEUED ones re-enter the queue in their original
  // order. Intended for start-up, before any other call.
  void restore(std::vector<JobRecord> records);

  // Drops finished jobs whose completion is older than result_ttl.
  std::size_t prune(TimePoint now);

 private:
  void journal(const nlohmann::json& event);

  SchedulerConfig config_;
  std::shared_ptr<const Backend> backend_;
  std::shared_ptr<const Clock> clock_;
  std::shared_ptr<Journal> journal_;
  std::size_t capacity_;

  mutable std::mutex mu_;
  std::map<JobId, JobRecord> store_;
  std::vector<JobId> order_;  // submission order, for records()
  std::deque<JobId> queue_;
  std::size_t arrivals_ = 0;
  std::size_t in_flight_ = 0;
  std::uint64_t batches_ = 0;
};

}  // namespace qsched
