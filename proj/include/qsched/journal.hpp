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

#include <cstdio>
#include <filesystem>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "qsched/job.hpp"

namespace qsched {

struct ReplayStats {
  std::size_t events = 0;
  // A torn final line (crash mid-write) is dropped and counted here.
  std::size_t truncated_lines = 0;
  // Jobs that were SCHEDULED or RUNNING and have been put back in the queue.
  std::size_t rolled_back = 0;
};

// Append-only JSON-lines event log; the format is described in
// docs/journal-format.md. Every append is flushed and fsync'd before it
// returns.
class Journal {
 public:
  explicit Journal(std::filesystem::path path);
  ~Journal();
  Journal(const Journal&) = delete;
  Journal& operator=(const Journal&) = delete;

  const std::filesystem::path& path() const noexcept { return path_; }

  void append(const nlohmann::json& event);

  // Rebuilds job records in submission order. Jobs caught in SCHEDULED or
  // RUNNING come back as QUEUED with batch and dispatch data cleared.
  static std::vector<JobRecord> replay(const std::filesystem::path& path,
                                       ReplayStats* stats = nullptr);

  // Atomically rewrites `path` with the minimal event sequence that replays
  // to `records`.
  static void compact(const std::filesystem::path& path, std::span<const JobRecord> records);

  static nlohmann::json submitted_event(const JobRecord& record);
  static nlohmann::json scheduled_event(const BatchId& batch, std::span<const JobId> jobs,
                                        TimePoint at);
  static nlohmann::json running_event(const BatchId& batch, std::span<const JobId> jobs,
                                      TimePoint at);
  static nlohmann::json done_event(const JobId& job, const CountsDistribution& result,
                                   TimePoint at);
  static nlohmann::json failed_event(const JobId& job, const std::string& error, TimePoint at);
  static nlohmann::json pruned_event(const JobId& job, TimePoint at);

 private:
  std::filesystem::path path_;
  std::FILE* file_ = nullptr;
  std::mutex mu_;
};

}  // namespace qsched
