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

#include "qsched/scheduler.hpp"

#include <algorithm>
#include <limits>
#include <utility>

#include "qsched/error.hpp"
#include "qsched/rng.hpp"
#include "qsched/unscheduler.hpp"

namespace qsched {

void SchedulerConfig::validate() const {
  if (capacity < 1) throw Error(ErrorCode::InvalidArgument, "capacity must be >= 1");
  if (composed_shots < 1) throw Error(ErrorCode::InvalidArgument, "composed_shots must be >= 1");
  if (cycle_duration.count() <= 0) {
    throw Error(ErrorCode::InvalidArgument, "cycle_duration must be positive");
  }
}

Scheduler::Scheduler(SchedulerConfig config, std::shared_ptr<const Backend> backend,
                     std::shared_ptr<const Clock> clock, std::shared_ptr<Journal> journal)
    : config_(std::move(config)),
      backend_(std::move(backend)),
      clock_(std::move(clock)),
      journal_(std::move(journal)) {
  config_.validate();
  if (!backend_ || !clock_) throw Error(ErrorCode::InvalidArgument, "backend and clock required");
  capacity_ = std::min(config_.capacity, backend_->descriptor().max_qubits);
}

void Scheduler::journal(const nlohmann::json& event) {
  if (journal_) journal_->append(event);
}

JobId Scheduler::enqueue(Circuit circuit, std::uint64_t requested_shots) {
  if (requested_shots < 1) throw Error(ErrorCode::InvalidShots, "shots must be at least 1");
  circuit = ensure_measurements(std::move(circuit));
  validate(circuit, std::numeric_limits<std::size_t>::max());
  if (circuit_width(circuit) > capacity_) {
    throw Error(ErrorCode::TooWide,
                "circuit is " + std::to_string(circuit_width(circuit)) +
                    " qubits wide, capacity is " + std::to_string(capacity_),
                std::to_string(capacity_));
  }
  JobRecord record;
  record.job.id = new_job_id();
  record.job.circuit = std::move(circuit);
  record.job.requested_shots = requested_shots;
  record.job.submitted_at = clock_->now();
  record.timings.enqueued = record.job.submitted_at;

  std::lock_guard lock(mu_);
  while (store_.count(record.job.id)) record.job.id = new_job_id();
  journal(Journal::submitted_event(record));
  const JobId id = record.job.id;
  store_.emplace(id, std::move(record));
  order_.push_back(id);
  queue_.push_back(id);
  ++arrivals_;
  return id;
}

DispatchDecision Scheduler::run_cycle(TimePoint now) {
  std::lock_guard lock(mu_);
  const std::size_t arrivals = std::exchange(arrivals_, 0);
  DispatchDecision decision;
  if (queue_.empty()) return decision;
  if (config_.strict_serial && in_flight_ > 0) return decision;

  std::vector<std::size_t> widths;
  widths.reserve(queue_.size());
  for (const JobId& id : queue_) widths.push_back(circuit_width(store_.at(id).job.circuit));
  const std::vector<std::size_t> taken = first_fit(widths, capacity_);
  std::size_t used = 0;
  for (std::size_t i : taken) used += widths[i];
  const bool saturated = used == capacity_ || taken.size() < queue_.size();
  if (arrivals > 0 && !saturated) return decision;

  std::vector<QuantumJob> jobs;
  jobs.reserve(queue_.size());
  for (const JobId& id : queue_) jobs.push_back(store_.at(id).job);
  ComposeResult composed = compose(jobs, capacity_);

  journal(Journal::scheduled_event(composed.composed.batch_id, composed.selected, now));
  for (const JobId& id : composed.selected) {
    JobRecord& r = store_.at(id);
    r.job.transition(JobStatus::Scheduled);
    r.job.batch_id = composed.composed.batch_id;
    r.timings.dispatched = now;
  }
  std::erase_if(queue_, [&](const JobId& id) {
    return store_.at(id).job.status != JobStatus::Queued;
  });
  ++in_flight_;

  decision.kind = DispatchDecision::Kind::Dispatch;
  decision.batch = std::move(composed.composed);
  decision.skipped = std::move(composed.skipped);
  return decision;
}

std::map<JobId, CountsDistribution> Scheduler::execute_batch(const ComposedCircuit& batch) {
  std::vector<JobId> members;
  for (const Placement& p : batch.placements) members.push_back(p.job_id);
  std::optional<std::uint64_t> seed;
  {
    std::lock_guard lock(mu_);
    for (const JobId& id : members) {
      const JobRecord& r = store_.at(id);
      if (r.job.status != JobStatus::Scheduled || r.job.batch_id != batch.batch_id) {
        throw Error(ErrorCode::Internal, "job " + id.value + " is not scheduled in batch " +
                                             batch.batch_id.value);
      }
    }
    journal(Journal::running_event(batch.batch_id, members, clock_->now()));
    for (const JobId& id : members) store_.at(id).job.transition(JobStatus::Running);
    if (config_.seed) seed = rng::derive(*config_.seed, rng::kBatchStream, batches_);
    ++batches_;
  }

  std::map<JobId, CountsDistribution> results;
  std::string failure;
  try {
    const CountsDistribution counts =
        backend_->execute(batch.circuit, config_.composed_shots, seed, std::nullopt);
    results = demux(counts, batch.placements);
  } catch (const std::exception& e) {
    failure = e.what();
    if (failure.empty()) failure = "backend error";
    results.clear();
  }

  std::lock_guard lock(mu_);
  const TimePoint done_at = clock_->now();
  for (const JobId& id : members) {
    JobRecord& r = store_.at(id);
    if (failure.empty()) {
      const CountsDistribution& part = results.at(id);
      journal(Journal::done_event(id, part, done_at));
      r.job.transition(JobStatus::Done);
      r.result = part;
    } else {
      journal(Journal::failed_event(id, failure, done_at));
      r.job.transition(JobStatus::Failed);
      r.job.error = failure;
    }
    r.timings.completed = done_at;
  }
  --in_flight_;
  return results;
}

std::optional<JobRecord> Scheduler::find(const JobId& id) const {
  std::lock_guard lock(mu_);
  auto it = store_.find(id);
  if (it == store_.end()) return std::nullopt;
  return it->second;
}

std::vector<QueueEntry> Scheduler::queue_snapshot() const {
  std::lock_guard lock(mu_);
  std::vector<QueueEntry> out;
  out.reserve(queue_.size());
  for (const JobId& id : queue_) {
    const QuantumJob& job = store_.at(id).job;
    out.push_back({id, job.circuit.name, circuit_width(job.circuit), out.size()});
  }
  return out;
}

std::vector<JobRecord> Scheduler::records() const {
  std::lock_guard lock(mu_);
  std::vector<JobRecord> out;
  out.reserve(order_.size());
  for (const JobId& id : order_) out.push_back(store_.at(id));
  return out;
}

std::size_t Scheduler::queue_size() const {
  std::lock_guard lock(mu_);
  return queue_.size();
}

std::size_t Scheduler::in_flight() const {
  std::lock_guard lock(mu_);
  return in_flight_;
}

void Scheduler::restore(std::vector<JobRecord> records) {
  std::lock_guard lock(mu_);
  for (JobRecord& r : records) {
    const JobId id = r.job.id;
    const bool queued = r.job.status == JobStatus::Queued;
    if (!store_.emplace(id, std::move(r)).second) continue;
    order_.push_back(id);
    if (queued) queue_.push_back(id);
  }
}

std::size_t Scheduler::prune(TimePoint now) {
  if (config_.result_ttl.count() <= 0) return 0;
  std::lock_guard lock(mu_);
  std::size_t removed = 0;
  std::erase_if(order_, [&](const JobId& id) {
    const JobRecord& r = store_.at(id);
    const bool finished = r.job.status == JobStatus::Done || r.job.status == JobStatus::Failed;
    if (!finished || !r.timings.completed || *r.timings.completed + config_.result_ttl > now) {
      return false;
    }
    journal(Journal::pruned_event(id, now));
    store_.erase(id);
    ++removed;
    return true;
  });
  return removed;
}

}  // namespace qsched
