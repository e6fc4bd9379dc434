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

// qsched command-line front end. Talks to the library only through the C API.

#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include <pthread.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "qsched/qsched.h"

namespace {

using nlohmann::json;

enum Exit { kOk = 0, kApiError = 1, kConnectionError = 2, kLocalError = 3 };

// Owns a qs_string and frees it.
class CString {
 public:
  CString() = default;
  ~CString() { qs_string_free(s_); }
  CString(const CString&) = delete;
  CString& operator=(const CString&) = delete;
  qs_string** out() { return &s_; }
  std::string str() const { return std::string(qs_string_data(s_), qs_string_size(s_)); }

 private:
  qs_string* s_ = nullptr;
};

int report(qs_status status) {
  std::cerr << "error: " << qs_status_name(status) << ": " << qs_last_error() << "\n";
  if (status == QS_ERR_CONNECTION) return kConnectionError;
  if (status == QS_ERR_API) return kApiError;
  return kLocalError;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct ServeOptions {
  std::string config;
  std::optional<std::size_t> capacity;
  std::optional<long long> cycle_ms;
  std::optional<std::uint64_t> shots;
  std::optional<std::uint64_t> seed;
  std::string listen;
  std::string journal;
  bool strict_serial = false;
};

int serve(const ServeOptions& o) {
  CString cfg;
  if (qs_status st = qs_config_load(o.config.empty() ? nullptr : o.config.c_str(), cfg.out())) {
    return report(st);
  }
  json j = json::parse(cfg.str());
  if (o.capacity) j["capacity"] = *o.capacity;
  if (o.cycle_ms) j["cycle_ms"] = *o.cycle_ms;
  if (o.shots) j["composed_shots"] = *o.shots;
  if (o.seed) j["seed"] = *o.seed;
  if (!o.listen.empty()) j["listen"] = o.listen;
  if (!o.journal.empty()) j["journal"] = o.journal;
  if (o.strict_serial) j["strict_serial"] = true;

  // Signals go to a dedicated thread that stops the service.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  qs_service* svc = nullptr;
  if (qs_status st = qs_service_create(j.dump().c_str(), &svc)) return report(st);
  std::cerr << "qsched: serving on " << j["listen"].get<std::string>() << " (capacity "
            << j["capacity"] << ", cycle " << j["cycle_ms"] << " ms, " << j["composed_shots"]
            << " shots per batch)\n";
  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    qs_service_stop(svc);
  });
  const qs_status st = qs_service_run(svc);
  // Wake the waiter if the server stopped for another reason.
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  qs_service_free(svc);
  return st == QS_OK ? kOk : report(st);
}

int submit(const std::string& file, std::string format, std::uint64_t shots,
           const std::string& server, const std::string& name) {
  std::string payload;
  try {
    payload = read_file(file);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kLocalError;
  }
  if (format.empty()) {
    format = file.size() >= 5 && file.compare(file.size() - 5, 5, ".qasm") == 0 ? "qasm" : "quirk";
  }
  CString id;
  if (qs_status st = qs_client_submit(server.c_str(), format.c_str(), payload.c_str(), shots,
                                      name.empty() ? nullptr : name.c_str(), id.out())) {
    return report(st);
  }
  std::cout << id.str() << "\n";
  return kOk;
}

int get(const std::string& server, const std::string& path) {
  int http = 0;
  CString body;
  if (qs_status st = qs_client_get(server.c_str(), path.c_str(), &http, body.out())) {
    return report(st);
  }
  if (http != 200) {
    std::cerr << "error: HTTP " << http << ": " << body.str() << "\n";
    return kApiError;
  }
  const json j = json::parse(body.str(), nullptr, false);
  std::cout << (j.is_discarded() ? body.str() : j.dump(2)) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qsched: multi-programming scheduler for quantum circuits"};
  app.require_subcommand(1);
  app.require_subcommand(1);
  const std::string default_server = "127.0.0.1:8080";

  ServeOptions serve_opts;
  auto* serve_cmd = app.add_subcommand("serve", "Run the scheduler service");
  serve_cmd->add_option("-c,--config", serve_opts.config, "JSON config file");
  serve_cmd->add_option("--capacity", serve_opts.capacity, "Qubits per composed circuit (default 127)");
  serve_cmd->add_option("--cycle-ms", serve_opts.cycle_ms, "Cycle length in ms (default 5000)");
  serve_cmd->add_option("--shots", serve_opts.shots, "Shots per composed circuit (default 10000)");
  serve_cmd->add_option("--seed", serve_opts.seed, "Base seed for batch execution");
  serve_cmd->add_option("--listen", serve_opts.listen, "host:port (default 127.0.0.1:8080)");
  serve_cmd->add_option("--journal", serve_opts.journal, "Journal file for durability");
  serve_cmd->add_flag("--strict-serial", serve_opts.strict_serial,
                      "Never dispatch while a batch is running");

  std::string file, format, server = default_server, name;
  std::uint64_t shots = 1000;
  auto* submit_cmd = app.add_subcommand("submit", "Submit a circuit file");
  submit_cmd->add_option("file", file, "Circuit file (.qasm, or Quirk URL/JSON)")->required();
  submit_cmd->add_option("-f,--format", format, "qasm or quirk (default: by extension)")
      ->check(CLI::IsMember({"qasm", "quirk"}));
  submit_cmd->add_option("-s,--shots", shots, "Requested shots")->capture_default_str();
  submit_cmd->add_option("--server", server, "Service address")->capture_default_str();
  submit_cmd->add_option("--name", name, "Circuit name");

  std::string job_id;
  bool requested = false;
  auto* result_cmd = app.add_subcommand("result", "Fetch the status and counts of a job");
  result_cmd->add_option("job_id", job_id, "Job id returned by submit")->required();
  result_cmd->add_option("--server", server, "Service address")->capture_default_str();
  result_cmd->add_flag("--requested-shots", requested, "Downsample counts to the requested shots");

  auto* queue_cmd = app.add_subcommand("queue", "Show the queue");
  queue_cmd->add_option("--server", server, "Service address")->capture_default_str();

  auto* backends_cmd = app.add_subcommand("backends", "Show the backend descriptors");
  backends_cmd->add_option("--server", server, "Service address")->capture_default_str();

  std::string corpus = "corpus", output;
  std::size_t capacity = 12;
  std::uint64_t bench_shots = 10000, seed = 0;
  double depol = 0.0, readout = 0.0;
  bool parallel = false, placeholder_noise = false;
  auto* bench_cmd = app.add_subcommand("bench", "Compare scheduled and individual execution");
  bench_cmd->add_option("--corpus", corpus, "Directory of circuit files")->capture_default_str();
  bench_cmd->add_option("--capacity", capacity, "Qubits per composed circuit")->capture_default_str();
  bench_cmd->add_option("--shots", bench_shots, "Shots per execution")->capture_default_str();
  bench_cmd->add_option("--seed", seed, "Seed")->capture_default_str();
  auto* noise_opt =
      bench_cmd->add_option("--noise", depol, "Depolarizing probability on scheduled runs")
          ->capture_default_str();
  auto* readout_opt =
      bench_cmd->add_option("--readout", readout, "Readout flip probability on scheduled runs")
          ->capture_default_str();
  bench_cmd
      ->add_flag("--placeholder-noise", placeholder_noise,
                 "Use 0.01 for both noise probabilities (a stand-in, not a device model)")
      ->excludes(noise_opt)
      ->excludes(readout_opt);
  bench_cmd->add_option("-o,--output", output, "CSV output path");
  bench_cmd->add_flag("--parallel", parallel, "Run individual executions concurrently");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kLocalError;
  }

  if (*serve_cmd) return serve(serve_opts);
  if (*submit_cmd) return submit(file, format, shots, server, name);
  if (*result_cmd) {
    return get(server, "/results/" + job_id + (requested ? "?shots=requested" : ""));
  }
  if (*queue_cmd) return get(server, "/queue");
  if (*backends_cmd) return get(server, "/backends");
  if (*bench_cmd) {
    if (placeholder_noise) depol = readout = QS_PLACEHOLDER_NOISE;
    const json bench_cfg = {{"corpus_dir", corpus},  {"capacity", capacity},
                            {"shots", bench_shots}, {"seed", seed},
                            {"depolarizing_prob", depol}, {"readout_flip_prob", readout},
                            {"output", output},     {"parallel", parallel}};
    CString out;
    if (qs_status st = qs_bench_run(bench_cfg.dump().c_str(), out.out())) return report(st);
    const json r = json::parse(out.str());
    for (const auto& line : r["log"]) std::cerr << line.get<std::string>() << "\n";
    std::cout << r["csv"].get<std::string>();
    if (!output.empty()) std::cerr << "wrote " << output << "\n";
    return kOk;
  }
  return kLocalError;
}
