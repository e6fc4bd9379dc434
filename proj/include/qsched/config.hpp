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

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "qsched/scheduler.hpp"
#include "qsched/simulator.hpp"

namespace qsched {

struct ServiceConfig {
  SchedulerConfig scheduler;
  std::string host = "127.0.0.1";
  int port = 8080;
  // Journal file; no persistence when unset.
  std::optional<std::filesystem::path> journal;
  std::size_t simulator_max_qubits = kSimulatorMaxQubits;
  std::optional<NoiseConfig> noise;
};

// Keys: capacity, cycle_ms, composed_shots, backend, strict_serial, seed,
// result_ttl_s, listen ("host:port"), journal, simulator_max_qubits and
// noise {depolarizing_prob, readout_flip_prob}. Missing keys keep `base`.
ServiceConfig config_from_json(const nlohmann::json& j, ServiceConfig base = {});
nlohmann::json config_to_json(const ServiceConfig& config);

// Applies QSCHED_CAPACITY, QSCHED_CYCLE_MS, QSCHED_COMPOSED_SHOTS,
// QSCHED_BACKEND, QSCHED_STRICT_SERIAL, QSCHED_SEED, QSCHED_RESULT_TTL_S,
// QSCHED_LISTEN and QSCHED_JOURNAL when present in the environment.
ServiceConfig apply_env_overrides(ServiceConfig config);

// Defaults, then the JSON file (if given), then the environment.
ServiceConfig load_config(const std::optional<std::filesystem::path>& file);

// Builds the backend named in the config. Only "statevector_simulator" exists.
std::shared_ptr<const Backend> make_backend(const ServiceConfig& config);

}  // namespace qsched
