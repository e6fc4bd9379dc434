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

#include "qsched/composer.hpp"

#include <algorithm>
#include <iterator>

#include "qsched/error.hpp"

namespace qsched {

std::vector<Instruction> offset_circuit(const Circuit& circuit, std::size_t qubit_offset,
                                        std::size_t clbit_offset) {
  std::vector<Instruction> out = circuit.instructions;
  for (Instruction& ins : out) {
    for (std::size_t& q : ins.qubits) q += qubit_offset;
    if (ins.clbit) *ins.clbit += clbit_offset;
  }
  return out;
}

Circuit ensure_measurements(Circuit circuit) {
  if (has_measurement(circuit)) return circuit;
  for (std::size_t q = 0; q < circuit.num_qubits; ++q) {
    circuit.instructions.push_back({GateKind::MEASURE, {q}, {}, q});
  }
  circuit.num_clbits = std::max(circuit.num_clbits, circuit.num_qubits);
  return circuit;
}

std::vector<std::size_t> first_fit(std::span<const std::size_t> widths, std::size_t capacity) {
  std::vector<std::size_t> taken;
  std::size_t left = capacity;
  for (std::size_t i = 0; i < widths.size(); ++i) {
    if (widths[i] <= left) {
      taken.push_back(i);
      left -= widths[i];
    }
  }
  return taken;
}

ComposeResult compose(std::span<const QuantumJob> jobs, std::size_t capacity) {
  std::vector<std::size_t> widths;
  widths.reserve(jobs.size());
  for (const QuantumJob& job : jobs) widths.push_back(circuit_width(job.circuit));
  const std::vector<std::size_t> taken = first_fit(widths, capacity);
  if (taken.empty()) {
    throw Error(ErrorCode::EmptyBatch, "no queued job fits in capacity " +
                                           std::to_string(capacity));
  }

  ComposeResult result;
  ComposedCircuit& composed = result.composed;
  composed.batch_id = new_batch_id();
  composed.circuit.name = "batch-" + composed.batch_id.value;

  std::size_t next = 0;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (next < taken.size() && taken[next] == i) {
      ++next;
      const Circuit part = ensure_measurements(jobs[i].circuit);
      Placement p{jobs[i].id, composed.circuit.num_qubits, part.num_qubits,
                  composed.circuit.num_clbits, part.num_clbits};
      auto shifted = offset_circuit(part, p.qubit_offset, p.clbit_offset);
      composed.circuit.instructions.insert(composed.circuit.instructions.end(),
                                           std::make_move_iterator(shifted.begin()),
                                           std::make_move_iterator(shifted.end()));
      composed.circuit.num_qubits += p.qubit_count;
      composed.circuit.num_clbits += p.clbit_count;
      composed.placements.push_back(std::move(p));
      result.selected.push_back(jobs[i].id);
    } else {
      result.skipped.push_back(jobs[i].id);
    }
  }
  return result;
}

}  // namespace qsched
