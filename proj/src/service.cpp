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

#include "qsched/service.hpp"

#include <functional>

#include <httplib.h>

#include "qsched/error.hpp"
#include "qsched/json_io.hpp"
#include "qsched/qasm.hpp"
#include "qsched/quirk.hpp"

namespace qsched {

using nlohmann::json;

json error_body(std::string_view code, const std::string& message, const std::string& detail) {
  return {{"code", code}, {"message", message}, {"detail", detail}};
}

namespace {

HttpResponse error_response(int status, const Error& e) {
  return {status, error_body(error_code_name(e.code()), e.what(), e.detail())};
}

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::TooWide: return 422;
    case ErrorCode::NotFound: return 404;
    case ErrorCode::Io:
    case ErrorCode::Internal:
    case ErrorCode::Backend: return 500;
    default: return 400;
  }
}

std::uint64_t hash_id(const std::string& id) { return std::hash<std::string>{}(id); }

}  // namespace

Service::Service(ServiceConfig config, std::shared_ptr<const Clock> clock,
                 std::shared_ptr<const Backend> backend)
    : config_(std::move(config)), clock_(std::move(clock)) {
  if (!backend) backend = make_backend(config_);
  std::vector<JobRecord> restored;
  if (config_.journal) {
    restored = Journal::replay(*config_.journal, &replay_stats_);
    Journal::compact(*config_.journal, restored);
    journal_ = std::make_shared<Journal>(*config_.journal);
  }
  scheduler_ = std::make_unique<Scheduler>(config_.scheduler, std::move(backend), clock_, journal_);
  scheduler_->restore(std::move(restored));
}

Service::~Service() {
  stop();
  stop_dispatcher();
}

HttpResponse Service::submit(const std::string& body) {
  const json req = json::parse(body, nullptr, false);
  if (req.is_discarded() || !req.is_object()) {
    return {400, error_body("SyntaxError", "request body is not a JSON object")};
  }
  const auto format = req.value("format", std::string{});
  if (format != "qasm" && format != "quirk") {
    return {400, error_body("ValidationError", "format must be \"qasm\" or \"quirk\"")};
  }
  if (!req.contains("payload") || !req["payload"].is_string()) {
    return {400, error_body("ValidationError", "payload must be a string")};
  }
  if (!req.contains("shots") || !req["shots"].is_number_integer() ||
      req["shots"].get<std::int64_t>() < 1) {
    return {400, error_body("InvalidShots", "shots must be an integer >= 1")};
  }
  const auto shots = req["shots"].get<std::uint64_t>();
  const auto name = req.value("name", std::string{});
  try {
    const auto& payload = req["payload"].get_ref<const std::string&>();
    Circuit circuit = format == "qasm" ? parse_qasm(payload, name) : parse_quirk(payload, name);
    const JobId id = scheduler_->enqueue(std::move(circuit), shots);
    return {201, {{"job_id", id.value}}};
  } catch (const Error& e) {
    return error_response(status_for(e.code()), e);
  }
}

HttpResponse Service::result(const std::string& job_id, bool downsample_to_requested) const {
  const auto record = scheduler_->find(JobId{job_id});
  if (!record) return {404, error_body("NotFound", "unknown job id", job_id)};
  JobRecord view = *record;
  if (downsample_to_requested && view.result) {
    view.result = downsample(*view.result, view.job.requested_shots, hash_id(job_id));
  }
  return {200, record_to_json(view)};
}

HttpResponse Service::queue() const {
  json out = json::array();
  for (const QueueEntry& e : scheduler_->queue_snapshot()) {
    out.push_back({{"job_id", e.id.value}, {"name", e.name}, {"width", e.width},
                   {"position", e.position}});
  }
  return {200, out};
}

HttpResponse Service::backends() const {
  json d = descriptor_to_json(scheduler_->backend().descriptor());
  d["capacity"] = scheduler_->config().capacity;
  d["effective_capacity"] = scheduler_->effective_capacity();
  d["composed_shots"] = scheduler_->config().composed_shots;
  return {200, json::array({d})};
}

bool Service::tick() {
  DispatchDecision decision = scheduler_->run_cycle(clock_->now());
  if (decision.kind != DispatchDecision::Kind::Dispatch) {
    scheduler_->prune(clock_->now());
    return false;
  }
  scheduler_->execute_batch(*decision.batch);
  scheduler_->prune(clock_->now());
  return true;
}

void Service::start_dispatcher() {
  if (dispatcher_.joinable()) return;
  dispatcher_ = std::jthread([this](std::stop_token stop) {
    while (!stop.stop_requested()) {
      {
        std::unique_lock lock(dispatch_mu_);
        dispatch_cv_.wait_for(lock, stop, config_.scheduler.cycle_duration,
                              [] { return false; });
      }
      if (stop.stop_requested()) break;
      tick();
    }
  });
}

void Service::stop_dispatcher() {
  if (!dispatcher_.joinable()) return;
  dispatcher_.request_stop();
  dispatch_cv_.notify_all();
  dispatcher_.join();
}

void Service::install_routes() {
  auto send = [](httplib::Response& res, const HttpResponse& r) {
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  server_->Post("/circuits", [this, send](const httplib::Request& req, httplib::Response& res) {
    send(res, submit(req.body));
  });
  server_->Get(R"(/results/([^/]+))",
               [this, send](const httplib::Request& req, httplib::Response& res) {
                 const bool down = req.has_param("shots") &&
                                   req.get_param_value("shots") == "requested";
                 send(res, result(req.matches[1], down));
               });
  server_->Get("/queue", [this, send](const httplib::Request&, httplib::Response& res) {
    send(res, queue());
  });
  server_->Get("/backends", [this, send](const httplib::Request&, httplib::Response& res) {
    send(res, backends());
  });
  server_->set_error_handler([](const httplib::Request& req, httplib::Response& res) {
    if (!res.body.empty()) return;
    res.set_content(error_body(res.status == 404 ? "NotFound" : "HttpError",
                               "no route for " + req.method + " " + req.path)
                        .dump(),
                    "application/json");
  });
  server_->set_exception_handler(
      [](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
        std::string message = "internal error";
        try {
          std::rethrow_exception(ep);
        } catch (const std::exception& e) {
          message = e.what();
        } catch (...) {
        }
        res.status = 500;
        res.set_content(error_body("InternalError", message).dump(), "application/json");
      });
}

int Service::bind(const std::string& host, int port) {
  server_ = std::make_unique<httplib::Server>();
  install_routes();
  const int bound = port == 0 ? server_->bind_to_any_port(host) : 
                                (server_->bind_to_port(host, port) ? port : -1);
  if (bound < 0) {
    throw Error(ErrorCode::Io, "cannot bind " + host + ":" + std::to_string(port));
  }
  return bound;
}

void Service::serve() {
  if (!server_) throw Error(ErrorCode::Internal, "serve() called before bind()");
  server_->listen_after_bind();
}

void Service::stop() {
  if (server_) server_->stop();
}

}  // namespace qsched
