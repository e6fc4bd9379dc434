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

#include "qsched/config.hpp"

#include <cstdlib>
#include <fstream>

#include "qsched/error.hpp"

namespace qsched {

using nlohmann::json;

namespace {

void parse_listen(const std::string& listen, ServiceConfig& config) {
  const auto colon = listen.rfind(':');
  if (colon == std::string::npos) {
    throw Error(ErrorCode::InvalidArgument, "listen address must be host:port");
  }
  config.host = listen.substr(0, colon);
  try {
    config.port = std::stoi(listen.substr(colon + 1));
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidArgument, "bad port in listen address '" + listen + "'");
  }
}

}  // namespace

ServiceConfig config_from_json(const json& j, ServiceConfig base) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "config must be a JSON object");
  try {
    SchedulerConfig& s = base.scheduler;
    if (j.contains("capacity")) s.capacity = j["capacity"].get<std::size_t>();
    if (j.contains("cycle_ms")) s.cycle_duration = std::chrono::milliseconds(j["cycle_ms"].get<std::int64_t>());
    if (j.contains("composed_shots")) s.composed_shots = j["composed_shots"].get<std::uint64_t>();
    if (j.contains("backend")) s.backend = j["backend"].get<std::string>();
    if (j.contains("strict_serial")) s.strict_serial = j["strict_serial"].get<bool>();
    if (j.contains("seed")) {
      if (j["seed"].is_null()) {
        s.seed.reset();
      } else {
        s.seed = j["seed"].get<std::uint64_t>();
      }
    }
    if (j.contains("result_ttl_s")) s.result_ttl = std::chrono::seconds(j["result_ttl_s"].get<std::int64_t>());
    if (j.contains("listen")) parse_listen(j["listen"].get<std::string>(), base);
    if (j.contains("journal")) {
      if (j["journal"].is_null()) {
        base.journal.reset();
      } else {
        base.journal = j["journal"].get<std::string>();
      }
    }
    if (j.contains("simulator_max_qubits")) {
      base.simulator_max_qubits = j["simulator_max_qubits"].get<std::size_t>();
    }
    if (j.contains("noise")) {
      if (j["noise"].is_null()) {
        base.noise.reset();
      } else {
        NoiseConfig n;
        n.depolarizing_prob = j["noise"].value("depolarizing_prob", 0.0);
        n.readout_flip_prob = j["noise"].value("readout_flip_prob", 0.0);
        n.validate();
        base.noise = n;
      }
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("bad config value: ") + e.what());
  }
  base.scheduler.validate();
  return base;
}

json config_to_json(const ServiceConfig& config) {
  const SchedulerConfig& s = config.scheduler;
  json out = {
      {"capacity", s.capacity},
      {"cycle_ms", s.cycle_duration.count()},
      {"composed_shots", s.composed_shots},
      {"backend", s.backend},
      {"strict_serial", s.strict_serial},
      {"seed", s.seed ? json(*s.seed) : json(nullptr)},
      {"result_ttl_s", s.result_ttl.count()},
      {"listen", config.host + ":" + std::to_string(config.port)},
      {"journal", config.journal ? json(config.journal->string()) : json(nullptr)},
      {"simulator_max_qubits", config.simulator_max_qubits},
  };
  if (config.noise) {
    out["noise"] = {{"depolarizing_prob", config.noise->depolarizing_prob},
                    {"readout_flip_prob", config.noise->readout_flip_prob}};
  } else {
    out["noise"] = nullptr;
  }
  return out;
}

ServiceConfig apply_env_overrides(ServiceConfig config) {
  json patch = json::object();
  auto env = [](const char* name) -> std::optional<std::string> {
    const char* v = std::getenv(name);
    if (!v) return std::nullopt;
    return std::string(v);
  };
  auto number = [](const std::string& name, const std::string& v) {
    try {
      std::size_t used = 0;
      const long long n = std::stoll(v, &used);
      if (used != v.size()) throw std::invalid_argument(v);
      return n;
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, name + " must be an integer, got '" + v + "'");
    }
  };
  if (auto v = env("QSCHED_CAPACITY")) patch["capacity"] = number("QSCHED_CAPACITY", *v);
  if (auto v = env("QSCHED_CYCLE_MS")) patch["cycle_ms"] = number("QSCHED_CYCLE_MS", *v);
  if (auto v = env("QSCHED_COMPOSED_SHOTS")) {
    patch["composed_shots"] = number("QSCHED_COMPOSED_SHOTS", *v);
  }
  if (auto v = env("QSCHED_BACKEND")) patch["backend"] = *v;
  if (auto v = env("QSCHED_STRICT_SERIAL")) patch["strict_serial"] = *v == "1" || *v == "true";
  if (auto v = env("QSCHED_SEED")) patch["seed"] = number("QSCHED_SEED", *v);
  if (auto v = env("QSCHED_RESULT_TTL_S")) patch["result_ttl_s"] = number("QSCHED_RESULT_TTL_S", *v);
  if (auto v = env("QSCHED_LISTEN")) patch["listen"] = *v;
  if (auto v = env("QSCHED_JOURNAL")) patch["journal"] = *v;
  return config_from_json(patch, std::move(config));
}

ServiceConfig load_config(const std::optional<std::filesystem::path>& file) {
  ServiceConfig config;
  if (file) {
    std::ifstream in(*file);
    if (!in) throw Error(ErrorCode::Io, "cannot read config " + file->string());
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) throw Error(ErrorCode::InvalidArgument, "config is not valid JSON");
    config = config_from_json(j, config);
  }
  return apply_env_overrides(std::move(config));
}

std::shared_ptr<const Backend> make_backend(const ServiceConfig& config) {
  if (config.scheduler.backend != "statevector_simulator") {
    throw Error(ErrorCode::InvalidArgument, "unknown backend '" + config.scheduler.backend + "'");
  }
  return std::make_shared<StatevectorSimulator>(config.simulator_max_qubits, config.noise);
}

}  // namespace qsched
