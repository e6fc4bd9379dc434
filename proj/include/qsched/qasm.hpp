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

#include <string>
#include <string_view>

#include "qsched/circuit.hpp"

namespace qsched {

// Parses the OpenQASM 2.0 subset documented in docs/qasm-subset.md. The
// header line is optional. The result has been run through validate().
//
// Errors: Syntax (with "line L, column C" detail), UnsupportedGate, Index,
// Validation.
Circuit parse_qasm(std::string_view text, std::string name = {});

// Emits canonical text: header, qelib1 include, `qreg q[N];`, `creg c[M];`
// (omitted when M = 0), then one statement per instruction. Angles are written
// with 17 significant digits so parse_qasm(serialize_qasm(c)) reproduces them
// bit for bit.
std::string serialize_qasm(const Circuit& circuit);

}  // namespace qsched
