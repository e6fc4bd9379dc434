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
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qsched {

enum class GateKind : std::uint8_t {
  H,
  X,
  Y,
  Z,
  S,
  SDG,
  T,
  TDG,
  RX,
  RY,
  RZ,
  CX,
  CZ,
  SWAP,
  CCX,
  MEASURE,
  BARRIER,
};

inline constexpr std::size_t kVariadicArity = 0;

// Number of qubit operands; kVariadicArity for BARRIER (which takes >= 1).
std::size_t gate_arity(GateKind kind) noexcept;
std::size_t gate_param_count(GateKind kind) noexcept;
// Lower-case OpenQASM mnemonic ("h", "cx", "measure", ...).
std::string_view gate_name(GateKind kind) noexcept;
std::optional<GateKind> gate_from_name(std::string_view name) noexcept;
// True for every kind that applies a unitary (everything but MEASURE/BARRIER).
bool is_unitary(GateKind kind) noexcept;

struct Instruction {
  GateKind kind = GateKind::BARRIER;
  std::vector<std::size_t> qubits;
  std::vector<double> params;
  std::optional<std::size_t> clbit;

  friend bool operator==(const Instruction&, const Instruction&) = default;
};

struct Circuit {
  std::string name;
  std::size_t num_qubits = 0;
  std::size_t num_clbits = 0;
  std::vector<Instruction> instructions;

  // Structural equality; the name is metadata and does not participate.
  bool same_structure(const Circuit& other) const {
    return num_qubits == other.num_qubits && num_clbits == other.num_clbits &&
           instructions == other.instructions;
  }
};

// Default upper bound on circuit width accepted by validate().
inline constexpr std::size_t kDefaultMaxQubits = 127;

// Checks every Circuit/Instruction invariant: N >= 1, operand arity and
// distinctness, parameter count, clbit presence iff MEASURE, index ranges and
// unique MEASURE targets. Throws Error(Index) for out-of-range references and
// Error(Validation) for everything else.
void validate(const Circuit& circuit, std::size_t max_qubits = kDefaultMaxQubits);

std::size_t circuit_width(const Circuit& circuit) noexcept;

// Longest chain of instructions ordered by shared qubits. MEASURE is a layer;
// BARRIER aligns its qubits to a common level without adding one.
std::size_t circuit_depth(const Circuit& circuit);

bool has_measurement(const Circuit& circuit) noexcept;

}  // namespace qsched
