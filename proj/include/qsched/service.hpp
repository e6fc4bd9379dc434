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

#include <condition_variable>
#include <memory>
#include <mutex>
#include <string>
#include <thread>

#include <json.hpp>

#include "qsched/config.hpp"
#include "qsched/journal.hpp"
#include "qsched/scheduler.hpp"

namespace httplib {
class Server;
}

namespace qsched {

struct HttpResponse {
  int status = 200;
  nlohmann::json body;
};

// Error body used by every endpoint: {"code", "message", "detail"}.
nlohmann::json error_body(std::string_view code, const std::string& message,
                          const std::string& detail = {});

// The HTTP-facing service. Handler methods are callable directly (tests use
// them without a socket); listen() wires them to cpp-httplib routes.
//
//   POST /circuits       {"format": "qasm"|"quirk", "payload": str, "shots": n, "name"?: str}
//   GET  /results/{id}   add ?shots=requested to downsample to the requested shots
//   GET  /queue
//   GET  /backends
class Service {
 public:
  // Replays and compacts the journal (when configured) before accepting work.
  explicit Service(ServiceConfig config,
                   std::shared_ptr<const Clock> clock = std::make_shared<SystemClock>(),
                   std::shared_ptr<const Backend> backend = nullptr);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  HttpResponse submit(const std::string& body);
  HttpResponse result(const std::string& job_id, bool downsample_to_requested = false) const;
  HttpResponse queue() const;
  HttpResponse backends() const;

  // One dispatcher step: run_cycle(now) and, on DISPATCH, execute the batch.
  // Returns true when a batch was executed.
  bool tick();

  // Background dispatcher calling tick() every cycle_duration.
  void start_dispatcher();
  void stop_dispatcher();

  // Binds (port 0 picks a free port) and returns the bound port; serve() then
  // blocks until stop() is called.
  int bind(const std::string& host, int port);
  void serve();
  void stop();

  Scheduler& scheduler() noexcept { return *scheduler_; }
  const ServiceConfig& config() const noexcept { return config_; }
  const ReplayStats& replay_stats() const noexcept { return replay_stats_; }

 private:
  void install_routes();

  ServiceConfig config_;
  std::shared_ptr<const Clock> clock_;
  std::shared_ptr<Journal> journal_;
  std::unique_ptr<Scheduler> scheduler_;
  ReplayStats replay_stats_;

  std::unique_ptr<httplib::Server> server_;
  std::jthread dispatcher_;
  std::mutex dispatch_mu_;
  std::condition_variable_any dispatch_cv_;
};

}  // namespace qsched
