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

#include "qsched/qsched.h"

#include <atomic>
#include <memory>
#include <string>

#include <json.hpp>

#include "qsched/bench.hpp"
#include "qsched/client.hpp"
#include "qsched/config.hpp"
#include "qsched/error.hpp"
#include "qsched/json_io.hpp"
#include "qsched/metrics.hpp"
#include "qsched/qasm.hpp"
#include "qsched/quirk.hpp"
#include "qsched/service.hpp"
#include "qsched/simulator.hpp"

struct qs_string {
  std::string value;
};

struct qs_circuit {
  qsched::Circuit circuit;
};

struct qs_service {
  std::unique_ptr<qsched::Service> service;
  std::atomic<int> port{0};
};

namespace {

using nlohmann::json;

thread_local std::string g_last_error;

qs_status fail(qs_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <class F>
qs_status guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return QS_OK;
  } catch (const qsched::Error& e) {
    return fail(static_cast<qs_status>(static_cast<int>(e.code())), e.what());
  } catch (const json::exception& e) {
    return fail(QS_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(QS_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(QS_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(QS_ERR_INTERNAL, "unknown error");
  }
}

qs_string* make_string(std::string s) { return new qs_string{std::move(s)}; }

#define QS_REQUIRE(cond, what)                                         \
  do {                                                                 \
    if (!(cond)) return fail(QS_ERR_INVALID_ARGUMENT, what " is null"); \
  } while (0)

qs_status distance(const char* a, const char* b, double* out, bool hellinger) {
  QS_REQUIRE(a && b && out, "argument");
  return guarded([&] {
    const json ja = json::parse(a, nullptr, false);
    const json jb = json::parse(b, nullptr, false);
    if (ja.is_discarded() || jb.is_discarded()) {
      throw qsched::Error(qsched::ErrorCode::Syntax, "counts are not valid JSON");
    }
    const auto pa = qsched::counts_from_json(ja);
    const auto pb = qsched::counts_from_json(jb);
    *out = hellinger ? qsched::hellinger(pa, pb) : qsched::wasserstein_normalized(pa, pb);
  });
}

}  // namespace

extern "C" {

const char* qs_status_name(qs_status status) {
  if (status == QS_OK) return "OK";
  static thread_local std::string name;
  name = std::string(qsched::error_code_name(static_cast<qsched::ErrorCode>(status)));
  return name.c_str();
}

const char* qs_last_error(void) { return g_last_error.c_str(); }

const char* qs_version(void) { return "0.1.0"; }

const char* qs_string_data(const qs_string* s) { return s ? s->value.c_str() : ""; }
size_t qs_string_size(const qs_string* s) { return s ? s->value.size() : 0; }
void qs_string_free(qs_string* s) { delete s; }

qs_status qs_circuit_parse_qasm(const char* text, qs_circuit** out) {
  QS_REQUIRE(text && out, "argument");
  return guarded([&] { *out = new qs_circuit{qsched::parse_qasm(text)}; });
}

qs_status qs_circuit_parse_quirk(const char* url_or_json, qs_circuit** out) {
  QS_REQUIRE(url_or_json && out, "argument");
  return guarded([&] { *out = new qs_circuit{qsched::parse_quirk(url_or_json)}; });
}

qs_status qs_circuit_load_file(const char* path, qs_circuit** out) {
  QS_REQUIRE(path && out, "argument");
  return guarded([&] { *out = new qs_circuit{qsched::load_circuit_file(path)}; });
}

void qs_circuit_free(qs_circuit* c) { delete c; }

size_t qs_circuit_width(const qs_circuit* c) { return c ? qsched::circuit_width(c->circuit) : 0; }
size_t qs_circuit_depth(const qs_circuit* c) { return c ? qsched::circuit_depth(c->circuit) : 0; }
size_t qs_circuit_num_clbits(const qs_circuit* c) { return c ? c->circuit.num_clbits : 0; }
size_t qs_circuit_num_instructions(const qs_circuit* c) {
  return c ? c->circuit.instructions.size() : 0;
}

qs_status qs_circuit_to_qasm(const qs_circuit* c, qs_string** out) {
  QS_REQUIRE(c && out, "argument");
  return guarded([&] { *out = make_string(qsched::serialize_qasm(c->circuit)); });
}

qs_status qs_simulate(const qs_circuit* c, uint64_t shots, uint64_t seed,
                      double depolarizing_prob, double readout_flip_prob,
                      qs_string** counts_json) {
  QS_REQUIRE(c && counts_json, "argument");
  return guarded([&] {
    qsched::NoiseConfig noise{depolarizing_prob, readout_flip_prob};
    const auto counts = qsched::execute(c->circuit, shots, seed,
                                        noise.is_zero() ? std::nullopt : std::optional(noise));
    *counts_json = make_string(qsched::counts_to_json(counts).dump());
  });
}

qs_status qs_hellinger(const char* a, const char* b, double* out) {
  return distance(a, b, out, true);
}

qs_status qs_wasserstein(const char* a, const char* b, double* out) {
  return distance(a, b, out, false);
}

qs_status qs_config_load(const char* path, qs_string** config_json) {
  QS_REQUIRE(config_json, "config_json");
  return guarded([&] {
    std::optional<std::filesystem::path> file;
    if (path && *path) file = path;
    *config_json = make_string(qsched::config_to_json(qsched::load_config(file)).dump(2));
  });
}

qs_status qs_service_create(const char* config_json, qs_service** out) {
  QS_REQUIRE(config_json && out, "argument");
  return guarded([&] {
    const json j = json::parse(config_json, nullptr, false);
    if (j.is_discarded()) {
      throw qsched::Error(qsched::ErrorCode::InvalidArgument, "config is not valid JSON");
    }
    auto svc = std::make_unique<qs_service>();
    svc->service = std::make_unique<qsched::Service>(qsched::config_from_json(j));
    *out = svc.release();
  });
}

qs_status qs_service_run(qs_service* s) {
  QS_REQUIRE(s, "service");
  return guarded([&] {
    const auto& cfg = s->service->config();
    s->port = s->service->bind(cfg.host, cfg.port);
    s->service->start_dispatcher();
    s->service->serve();
    s->service->stop_dispatcher();
  });
}

int qs_service_port(const qs_service* s) { return s ? s->port.load() : 0; }

void qs_service_stop(qs_service* s) {
  if (s) s->service->stop();
}

void qs_service_free(qs_service* s) { delete s; }

qs_status qs_client_submit(const char* server, const char* format, const char* payload,
                           uint64_t shots, const char* name, qs_string** job_id) {
  QS_REQUIRE(server && format && payload && job_id, "argument");
  return guarded([&] {
    *job_id = make_string(qsched::submit_circuit(server, format, payload, shots, name ? name : ""));
  });
}

qs_status qs_client_get(const char* server, const char* path, int* http_status,
                        qs_string** body) {
  QS_REQUIRE(server && path && http_status && body, "argument");
  return guarded([&] {
    const auto res = qsched::http_get(server, path);
    *http_status = res.status;
    *body = make_string(res.body);
  });
}

qs_status qs_bench_run(const char* config_json, qs_string** report_json) {
  QS_REQUIRE(config_json && report_json, "argument");
  return guarded([&] {
    const json j = json::parse(config_json, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw qsched::Error(qsched::ErrorCode::InvalidArgument, "bench config is not a JSON object");
    }
    qsched::BenchConfig cfg;
    cfg.corpus_dir = j.value("corpus_dir", std::string("corpus"));
    cfg.capacity = j.value("capacity", cfg.capacity);
    cfg.shots = j.value("shots", cfg.shots);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.output = j.value("output", std::string());
    cfg.parallel = j.value("parallel", false);
    const double depol = j.value("depolarizing_prob", 0.0);
    const double readout = j.value("readout_flip_prob", 0.0);
    if (depol > 0.0 || readout > 0.0) cfg.noise = qsched::NoiseConfig{depol, readout};

    const qsched::BenchReport report = qsched::run_bench(cfg);
    json per_job = json::array();
    for (const auto& d : report.distances.per_job) {
      per_job.push_back({{"job_id", d.job_id.value}, {"name", d.name}, {"width", d.width},
                         {"shots", d.shots}, {"hellinger", d.hellinger},
                         {"wasserstein", d.wasserstein}});
    }
    json batches = json::array();
    for (const auto& b : report.batches) batches.push_back({{"jobs", b.names}, {"width", b.width}});
    json out = {{"per_job", per_job},
                {"mean_hellinger_pct", report.distances.mean_hellinger_pct},
                {"mean_wasserstein_pct", report.distances.mean_wasserstein_pct},
                {"wasserstein_embedding", report.distances.wasserstein_embedding},
                {"batches", batches},
                {"log", report.log},
                {"csv", report.csv}};
    *report_json = make_string(out.dump(2));
  });
}

}  // extern "C"
