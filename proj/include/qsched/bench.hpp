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

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qsched/circuit.hpp"
#include "qsched/counts.hpp"
#include "qsched/metrics.hpp"
#include "qsched/simulator.hpp"

namespace qsched {

// Reads one circuit: *.qasm through parse_qasm, *.quirk / *.json / *.url
// through parse_quirk. The circuit is named after the file stem.
Circuit load_circuit_file(const std::filesystem::path& path);

struct BenchCircuit {
  std::string name;
  Circuit circuit;
};

// Every loadable file in `dir`, sorted by file name. Errors name the file.
std::vector<BenchCircuit> load_corpus(const std::filesystem::path& dir);

struct BenchConfig {
  std::filesystem::path corpus_dir;
  std::size_t capacity = 12;
  std::uint64_t shots = 10000;
  std::uint64_t seed = 0;
  // Applied to the scheduled (composed) executions only.
  std::optional<NoiseConfig> noise;
  // CSV destination; nothing is written when empty.
  std::filesystem::path output;
  // Run the individual executions on several threads (same results).
  bool parallel = false;
  std::size_t simulator_max_qubits = kSimulatorMaxQubits;
};

struct BenchBatch {
  std::vector<std::string> names;
  std::size_t width = 0;
};

struct BenchReport {
  DistanceReport distances;
  std::vector<BenchBatch> batches;
  // Keyed by job id ("<position>-<name>").
  std::map<std::string, CountsDistribution> individual;
  std::map<std::string, CountsDistribution> scheduled;
  std::string csv;
  std::vector<std::string> log;
};

// Runs each circuit alone (seed stream kRunStream, index = corpus position),
// then packs the whole corpus first-fit into as many batches as needed (batch b
// uses kBatchStream, b), demultiplexes, and compares. Job ids in the report
// are "<position>-<name>", so equal seeds give byte-identical CSV.
BenchReport run_bench(const std::vector<BenchCircuit>& corpus, const BenchConfig& config);
// Loads config.corpus_dir and writes config.output on success.
BenchReport run_bench(const BenchConfig& config);

}  // namespace qsched
