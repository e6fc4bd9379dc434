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

#include <cstddef>
#include <span>
#include <vector>

#include "qsched/circuit.hpp"
#include "qsched/job.hpp"

namespace qsched {

// The contiguous qubit and clbit windows one job occupies in a composed
// circuit. Kept so that results can be sliced back apart after execution.
struct Placement {
  JobId job_id;
  std::size_t qubit_offset = 0;
  std::size_t qubit_count = 0;
  std::size_t clbit_offset = 0;
  std::size_t clbit_count = 0;

  friend bool operator==(const Placement&, const Placement&) = default;
};

struct ComposedCircuit {
  Circuit circuit;
  std::vector<Placement> placements;
  BatchId batch_id;
};

struct ComposeResult {
  ComposedCircuit composed;
  std::vector<JobId> selected;
  std::vector<JobId> skipped;
};

// Copies the instructions of `circuit` with every qubit index shifted by
// `qubit_offset` and every clbit index by `clbit_offset`.
std::vector<Instruction> offset_circuit(const Circuit& circuit, std::size_t qubit_offset,
                                        std::size_t clbit_offset);

// Returns `circuit` unchanged if it measures anything; otherwise appends
// measure q[i] -> c[i] for every qubit and widens the classical register to
// at least num_qubits.
Circuit ensure_measurements(Circuit circuit);

// One left-to-right scan: index i is taken iff widths[i] fits in what is left
// of `capacity`. Returns the taken indices in scan order.
std::vector<std::size_t> first_fit(std::span<const std::size_t> widths, std::size_t capacity);

// Packs the jobs chosen by first_fit into one circuit. Selected jobs get
// consecutive windows in queue order; everything else is reported as skipped.
// Throws Error(EmptyBatch) when nothing fits.
ComposeResult compose(std::span<const QuantumJob> jobs, std::size_t capacity);

}  // namespace qsched
