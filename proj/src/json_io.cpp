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

#include "qsched/json_io.hpp"

#include "qsched/error.hpp"

namespace qsched {

using nlohmann::json;

json counts_to_json(const CountsDistribution& dist) {
  json counts = json::object();
  for (const auto& [key, n] : dist.counts) counts[key] = n;
  return {{"num_bits", dist.num_bits}, {"total_shots", dist.total_shots}, {"counts", counts}};
}

CountsDistribution counts_from_json(const json& j) {
  try {
    const bool wrapped = j.is_object() && j.contains("counts") && j["counts"].is_object();
    const json& counts = wrapped ? j["counts"] : j;
    if (!counts.is_object()) throw Error(ErrorCode::Validation, "counts must be a JSON object");
    CountsDistribution out;
    std::optional<std::size_t> bits;
    if (wrapped && j.contains("num_bits")) bits = j["num_bits"].get<std::size_t>();
    for (const auto& [key, value] : counts.items()) {
      if (!bits) bits = key.size();
      const auto n = value.get<std::uint64_t>();
      if (n == 0) continue;
      out.counts[key] = n;
      out.total_shots += n;
    }
    out.num_bits = bits.value_or(0);
    if (wrapped && j.contains("total_shots") &&
        j["total_shots"].get<std::uint64_t>() != out.total_shots) {
      throw Error(ErrorCode::Validation, "total_shots does not match the counts");
    }
    validate(out);
    return out;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Validation, std::string("malformed counts: ") + e.what());
  }
}

json descriptor_to_json(const BackendDescriptor& d) {
  json out = {{"name", d.name}, {"max_qubits", d.max_qubits}, {"seedable", d.seedable}};
  if (d.noise) {
    out["noise"] = {{"depolarizing_prob", d.noise->depolarizing_prob},
                    {"readout_flip_prob", d.noise->readout_flip_prob}};
  } else {
    out["noise"] = nullptr;
  }
  return out;
}

json record_to_json(const JobRecord& record) {
  const QuantumJob& job = record.job;
  json out = {
      {"job_id", job.id.value},
      {"name", job.circuit.name},
      {"status", std::string(to_string(job.status))},
      {"width", job.circuit.num_qubits},
      {"requested_shots", job.requested_shots},
  };
  if (job.batch_id) out["batch_id"] = job.batch_id->value;
  if (job.error) out["error"] = *job.error;
  json timings = json::object();
  if (record.timings.enqueued) timings["enqueued"] = to_unix_ms(*record.timings.enqueued);
  if (record.timings.dispatched) timings["dispatched"] = to_unix_ms(*record.timings.dispatched);
  if (record.timings.completed) timings["completed"] = to_unix_ms(*record.timings.completed);
  out["timings"] = timings;
  if (record.result) {
    json counts = json::object();
    for (const auto& [key, n] : record.result->counts) counts[key] = n;
    out["counts"] = counts;
    out["shots"] = record.result->total_shots;
    out["num_bits"] = record.result->num_bits;
  }
  return out;
}

}  // namespace qsched
