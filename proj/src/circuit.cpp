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

#include "qsched/circuit.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "qsched/error.hpp"

namespace qsched {
namespace {

struct GateInfo {
  GateKind kind;
  std::string_view name;
  std::size_t arity;
  std::size_t params;
};

constexpr std::array<GateInfo, 17> kGates{{
    {GateKind::H, "h", 1, 0},
    {GateKind::X, "x", 1, 0},
    {GateKind::Y, "y", 1, 0},
    {GateKind::Z, "z", 1, 0},
    {GateKind::S, "s", 1, 0},
    {GateKind::SDG, "sdg", 1, 0},
    {GateKind::T, "t", 1, 0},
    {GateKind::TDG, "tdg", 1, 0},
    {GateKind::RX, "rx", 1, 1},
    {GateKind::RY, "ry", 1, 1},
    {GateKind::RZ, "rz", 1, 1},
    {GateKind::CX, "cx", 2, 0},
    {GateKind::CZ, "cz", 2, 0},
    {GateKind::SWAP, "swap", 2, 0},
    {GateKind::CCX, "ccx", 3, 0},
    {GateKind::MEASURE, "measure", 1, 0},
    {GateKind::BARRIER, "barrier", kVariadicArity, 0},
}};

const GateInfo& info(GateKind kind) noexcept {
  return kGates[static_cast<std::size_t>(kind)];
}

}  // namespace

std::size_t gate_arity(GateKind kind) noexcept { return info(kind).arity; }
std::size_t gate_param_count(GateKind kind) noexcept { return info(kind).params; }
std::string_view gate_name(GateKind kind) noexcept { return info(kind).name; }

std::optional<GateKind> gate_from_name(std::string_view name) noexcept {
  for (const auto& g : kGates) {
    if (g.name == name) return g.kind;
  }
  return std::nullopt;
}

bool is_unitary(GateKind kind) noexcept {
  return kind != GateKind::MEASURE && kind != GateKind::BARRIER;
}

void validate(const Circuit& circuit, std::size_t max_qubits) {
  if (circuit.num_qubits < 1) {
    throw Error(ErrorCode::Validation, "circuit must have at least one qubit");
  }
  if (circuit.num_qubits > max_qubits) {
    throw Error(ErrorCode::Validation,
                "circuit uses " + std::to_string(circuit.num_qubits) +
                    " qubits, maximum is " + std::to_string(max_qubits));
  }
  std::set<std::size_t> measured_clbits;
  for (std::size_t i = 0; i < circuit.instructions.size(); ++i) {
    const Instruction& ins = circuit.instructions[i];
    const std::string where = "instruction " + std::to_string(i) + " (" +
                              std::string(gate_name(ins.kind)) + ")";
    const std::size_t arity = gate_arity(ins.kind);
    if (arity == kVariadicArity ? ins.qubits.empty() : ins.qubits.size() != arity) {
      throw Error(ErrorCode::Validation, where + ": wrong number of qubit operands");
    }
    if (ins.params.size() != gate_param_count(ins.kind)) {
      throw Error(ErrorCode::Validation, where + ": wrong number of parameters");
    }
    for (std::size_t a = 0; a < ins.qubits.size(); ++a) {
      if (ins.qubits[a] >= circuit.num_qubits) {
        throw Error(ErrorCode::Index, where + ": qubit index " +
                                          std::to_string(ins.qubits[a]) + " out of range");
      }
      for (std::size_t b = a + 1; b < ins.qubits.size(); ++b) {
        if (ins.qubits[a] == ins.qubits[b]) {
          throw Error(ErrorCode::Validation, where + ": duplicate qubit operand " +
                                                 std::to_string(ins.qubits[a]));
        }
      }
    }
    const bool is_measure = ins.kind == GateKind::MEASURE;
    if (is_measure != ins.clbit.has_value()) {
      throw Error(ErrorCode::Validation,
                  where + ": classical bit must be present exactly on measure");
    }
    if (is_measure) {
      if (*ins.clbit >= circuit.num_clbits) {
        throw Error(ErrorCode::Index, where + ": clbit index " +
                                          std::to_string(*ins.clbit) + " out of range");
      }
      if (!measured_clbits.insert(*ins.clbit).second) {
        throw Error(ErrorCode::Validation, where + ": clbit " +
                                               std::to_string(*ins.clbit) +
                                               " measured twice");
      }
    }
  }
}

std::size_t circuit_width(const Circuit& circuit) noexcept { return circuit.num_qubits; }

std::size_t circuit_depth(const Circuit& circuit) {
  std::vector<std::size_t> level(circuit.num_qubits, 0);
  std::size_t depth = 0;
  for (const Instruction& ins : circuit.instructions) {
    std::size_t top = 0;
    for (std::size_t q : ins.qubits) top = std::max(top, level.at(q));
    if (ins.kind != GateKind::BARRIER) ++top;
    for (std::size_t q : ins.qubits) level[q] = top;
    depth = std::max(depth, top);
  }
  return depth;
}

bool has_measurement(const Circuit& circuit) noexcept {
  return std::any_of(circuit.instructions.begin(), circuit.instructions.end(),
                     [](const Instruction& i) { return i.kind == GateKind::MEASURE; });
}

}  // namespace qsched
