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

#include "qsched/bench.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "qsched/composer.hpp"
#include "qsched/error.hpp"
#include "qsched/qasm.hpp"
#include "qsched/quirk.hpp"
#include "qsched/rng.hpp"
#include "qsched/unscheduler.hpp"

namespace qsched {
namespace {

bool is_circuit_file(const std::filesystem::path& p) {
  const auto ext = p.extension().string();
  return ext == ".qasm" || ext == ".quirk" || ext == ".json" || ext == ".url";
}

std::string job_label(std::size_t index, const std::string& name) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%02zu-", index);
  return buf + name;
}

}  // namespace

Circuit load_circuit_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path.string(), path.string());
  std::ostringstream text;
  text << in.rdbuf();
  const std::string name = path.stem().string();
  try {
    if (path.extension() == ".qasm") return parse_qasm(text.str(), name);
    return parse_quirk(text.str(), name);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what(), path.string());
  }
}

std::vector<BenchCircuit> load_corpus(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw Error(ErrorCode::Io, "corpus directory " + dir.string() + " does not exist");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && is_circuit_file(entry.path())) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<BenchCircuit> out;
  for (const auto& f : files) out.push_back({f.stem().string(), load_circuit_file(f)});
  return out;
}

BenchReport run_bench(const std::vector<BenchCircuit>& corpus, const BenchConfig& config) {
  if (corpus.empty()) throw Error(ErrorCode::EmptyDistribution, "benchmark corpus is empty");
  if (config.shots < 1) throw Error(ErrorCode::InvalidShots, "shots must be at least 1");
  if (config.noise) config.noise->validate();
  const std::size_t capacity = std::min(config.capacity, config.simulator_max_qubits);

  std::vector<QuantumJob> jobs;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    QuantumJob job;
    job.id = JobId{job_label(i, corpus[i].name)};
    job.circuit = ensure_measurements(corpus[i].circuit);
    job.circuit.name = corpus[i].name;
    job.requested_shots = config.shots;
    if (circuit_width(job.circuit) > capacity) {
      throw Error(ErrorCode::TooWide,
                  corpus[i].name + ": width " + std::to_string(circuit_width(job.circuit)) +
                      " exceeds capacity " + std::to_string(capacity),
                  corpus[i].name);
    }
    jobs.push_back(std::move(job));
  }

  BenchReport report;
  std::vector<CountsDistribution> individual(jobs.size());
  auto run_one = [&](std::size_t i) {
    individual[i] = execute(jobs[i].circuit, config.shots,
                            rng::derive(config.seed, rng::kRunStream, i), std::nullopt,
                            config.simulator_max_qubits);
  };
  if (config.parallel) {
    const std::size_t workers =
        std::max<std::size_t>(1, std::min<std::size_t>(jobs.size(), std::thread::hardware_concurrency()));
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < jobs.size(); i += workers) run_one(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  } else {
    for (std::size_t i = 0; i < jobs.size(); ++i) run_one(i);
  }

  std::map<JobId, CountsDistribution> scheduled;
  std::vector<QuantumJob> queue = jobs;
  for (std::uint64_t b = 0; !queue.empty(); ++b) {
    ComposeResult packed = compose(queue, capacity);
    BenchBatch batch;
    batch.width = packed.composed.circuit.num_qubits;
    for (const JobId& id : packed.selected) {
      batch.names.push_back(id.value);
    }
    const CountsDistribution counts =
        execute(packed.composed.circuit, config.shots, rng::derive(config.seed, rng::kBatchStream, b),
                config.noise, config.simulator_max_qubits);
    for (auto& [id, part] : demux(counts, packed.composed.placements)) {
      scheduled.emplace(id, std::move(part));
    }
    std::string line = "batch " + std::to_string(b) + ": width " + std::to_string(batch.width) + " [";
    for (std::size_t i = 0; i < batch.names.size(); ++i) {
      line += (i ? ", " : "") + batch.names[i];
    }
    report.log.push_back(line + "]");
    report.batches.push_back(std::move(batch));
    std::erase_if(queue, [&](const QuantumJob& j) {
      return std::find(packed.selected.begin(), packed.selected.end(), j.id) != packed.selected.end();
    });
  }

  std::vector<RunPair> pairs;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const QuantumJob& job = jobs[i];
    pairs.push_back({job.id, job.circuit.name, circuit_width(job.circuit), config.shots,
                     individual[i], scheduled.at(job.id)});
    report.individual.emplace(job.id.value, individual[i]);
    report.scheduled.emplace(job.id.value, scheduled.at(job.id));
  }
  report.distances = compare_runs(pairs);
  report.csv = report_csv(report.distances);
  return report;
}

BenchReport run_bench(const BenchConfig& config) {
  const auto corpus = load_corpus(config.corpus_dir);
  BenchReport report = run_bench(corpus, config);
  if (!config.output.empty()) {
    std::ofstream out(config.output, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + config.output.string());
    out << report.csv;
  }
  return report;
}

}  // namespace qsched
