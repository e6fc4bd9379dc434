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

#include "qsched/journal.hpp"

#include <fstream>
#include <map>

#include <unistd.h>

#include "qsched/error.hpp"
#include "qsched/json_io.hpp"
#include "qsched/qasm.hpp"

namespace qsched {
namespace {

using nlohmann::json;

constexpr int kFormatVersion = 1;

json event(std::string_view type) { return {{"v", kFormatVersion}, {"event", type}}; }

json id_list(std::span<const JobId> jobs) {
  json out = json::array();
  for (const JobId& id : jobs) out.push_back(id.value);
  return out;
}

void write_line(std::FILE* f, const json& j, const std::filesystem::path& path) {
  const std::string line = j.dump() + "\n";
  if (std::fwrite(line.data(), 1, line.size(), f) != line.size() || std::fflush(f) != 0 ||
      ::fsync(::fileno(f)) != 0) {
    throw Error(ErrorCode::Io, "failed to write journal " + path.string());
  }
}

}  // namespace

Journal::Journal(std::filesystem::path path) : path_(std::move(path)) {
  if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
  file_ = std::fopen(path_.c_str(), "ab");
  if (!file_) throw Error(ErrorCode::Io, "cannot open journal " + path_.string());
}

Journal::~Journal() {
  if (file_) std::fclose(file_);
}

void Journal::append(const json& event) {
  std::lock_guard lock(mu_);
  write_line(file_, event, path_);
}

json Journal::submitted_event(const JobRecord& record) {
  json e = event("submitted");
  e["job_id"] = record.job.id.value;
  e["name"] = record.job.circuit.name;
  e["qasm"] = serialize_qasm(record.job.circuit);
  e["requested_shots"] = record.job.requested_shots;
  e["at"] = to_unix_ms(record.job.submitted_at);
  return e;
}

json Journal::scheduled_event(const BatchId& batch, std::span<const JobId> jobs, TimePoint at) {
  json e = event("scheduled");
  e["batch_id"] = batch.value;
  e["job_ids"] = id_list(jobs);
  e["at"] = to_unix_ms(at);
  return e;
}

json Journal::running_event(const BatchId& batch, std::span<const JobId> jobs, TimePoint at) {
  json e = event("running");
  e["batch_id"] = batch.value;
  e["job_ids"] = id_list(jobs);
  e["at"] = to_unix_ms(at);
  return e;
}

json Journal::done_event(const JobId& job, const CountsDistribution& result, TimePoint at) {
  json e = event("done");
  e["job_id"] = job.value;
  e["result"] = counts_to_json(result);
  e["at"] = to_unix_ms(at);
  return e;
}

json Journal::failed_event(const JobId& job, const std::string& error, TimePoint at) {
  json e = event("failed");
  e["job_id"] = job.value;
  e["error"] = error;
  e["at"] = to_unix_ms(at);
  return e;
}

json Journal::pruned_event(const JobId& job, TimePoint at) {
  json e = event("pruned");
  e["job_id"] = job.value;
  e["at"] = to_unix_ms(at);
  return e;
}

std::vector<JobRecord> Journal::replay(const std::filesystem::path& path, ReplayStats* stats) {
  ReplayStats local;
  std::vector<JobRecord> records;
  std::map<std::string, std::size_t> index;
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    if (stats) *stats = local;
    return records;
  }

  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(std::move(line));
  // A final line without its newline was cut short by a crash.
  in.clear();
  in.seekg(0, std::ios::end);
  const auto size = static_cast<std::streamoff>(in.tellg());
  bool torn_tail = false;
  if (size > 0) {
    in.seekg(size - 1);
    char last = 0;
    in.get(last);
    torn_tail = last != '\n';
  }

  auto lookup = [&](const json& e) -> JobRecord* {
    auto it = index.find(e.at("job_id").get<std::string>());
    return it == index.end() ? nullptr : &records[it->second];
  };

  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::string& line = lines[n];
    if (line.empty()) continue;
    const bool is_last = n + 1 == lines.size();
    json e = json::parse(line, nullptr, false);
    if (e.is_discarded() || !e.is_object() || !e.contains("event")) {
      if (is_last && torn_tail) {
        ++local.truncated_lines;
        continue;
      }
      throw Error(ErrorCode::Io, "corrupt journal " + path.string() + " at line " +
                                     std::to_string(n + 1));
    }
    if (is_last && torn_tail) {
      // Parsed fine but never got its newline: the write was not acknowledged.
      ++local.truncated_lines;
      continue;
    }
    try {
      const auto type = e.at("event").get<std::string>();
      const TimePoint at = from_unix_ms(e.at("at").get<std::int64_t>());
      if (type == "submitted") {
        JobRecord r;
        r.job.id = JobId{e.at("job_id").get<std::string>()};
        r.job.circuit = parse_qasm(e.at("qasm").get<std::string>(), e.value("name", ""));
        r.job.requested_shots = e.at("requested_shots").get<std::uint64_t>();
        r.job.submitted_at = at;
        r.timings.enqueued = at;
        index[r.job.id.value] = records.size();
        records.push_back(std::move(r));
      } else if (type == "scheduled" || type == "running") {
        const BatchId batch{e.at("batch_id").get<std::string>()};
        for (const auto& id : e.at("job_ids")) {
          auto it = index.find(id.get<std::string>());
          if (it == index.end()) continue;
          JobRecord& r = records[it->second];
          r.job.status = type == "scheduled" ? JobStatus::Scheduled : JobStatus::Running;
          r.job.batch_id = batch;
          if (type == "scheduled") r.timings.dispatched = at;
        }
      } else if (type == "done") {
        if (JobRecord* r = lookup(e)) {
          r->job.status = JobStatus::Done;
          r->result = counts_from_json(e.at("result"));
          r->timings.completed = at;
        }
      } else if (type == "failed") {
        if (JobRecord* r = lookup(e)) {
          r->job.status = JobStatus::Failed;
          r->job.error = e.at("error").get<std::string>();
          r->timings.completed = at;
        }
      } else if (type == "pruned") {
        if (auto it = index.find(e.at("job_id").get<std::string>()); it != index.end()) {
          records[it->second].job.id.value.clear();
          index.erase(it);
        }
      } else {
        throw Error(ErrorCode::Io, "unknown journal event '" + type + "'");
      }
      ++local.events;
    } catch (const json::exception& ex) {
      throw Error(ErrorCode::Io, "malformed journal event at line " + std::to_string(n + 1) +
                                     ": " + ex.what());
    }
  }

  std::vector<JobRecord> out;
  out.reserve(records.size());
  for (JobRecord& r : records) {
    if (r.job.id.value.empty()) continue;
    if (r.job.status == JobStatus::Scheduled || r.job.status == JobStatus::Running) {
      r.job.status = JobStatus::Queued;
      r.job.batch_id.reset();
      r.timings.dispatched.reset();
      ++local.rolled_back;
    }
    out.push_back(std::move(r));
  }
  if (stats) *stats = local;
  return out;
}

void Journal::compact(const std::filesystem::path& path, std::span<const JobRecord> records) {
  const std::filesystem::path tmp = path.string() + ".compact";
  std::FILE* f = std::fopen(tmp.c_str(), "wb");
  if (!f) throw Error(ErrorCode::Io, "cannot write " + tmp.string());
  try {
    for (const JobRecord& r : records) {
      write_line(f, submitted_event(r), tmp);
      if (r.job.status != JobStatus::Done && r.job.status != JobStatus::Failed) continue;
      const JobId ids[] = {r.job.id};
      const BatchId batch = r.job.batch_id.value_or(BatchId{});
      const TimePoint dispatched = r.timings.dispatched.value_or(r.job.submitted_at);
      const TimePoint completed = r.timings.completed.value_or(dispatched);
      write_line(f, scheduled_event(batch, ids, dispatched), tmp);
      write_line(f, running_event(batch, ids, dispatched), tmp);
      if (r.job.status == JobStatus::Done && r.result) {
        write_line(f, done_event(r.job.id, *r.result, completed), tmp);
      } else {
        write_line(f, failed_event(r.job.id, r.job.error.value_or("unknown error"), completed),
                   tmp);
      }
    }
  } catch (...) {
    std::fclose(f);
    throw;
  }
  std::fclose(f);
  std::filesystem::rename(tmp, path);
}

}  // namespace qsched
