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

// Accepts either a share URL (`...quirk#circuit=<percent-encoded JSON>`) or
// the bare `{"cols": [...]}` object. Row index is the qubit index and clbit i
// always receives qubit i. Recognised cells: "H" "X" "Y" "Z" "S" "T" "•"
// "Measure" and the identity filler 1 / "1". A column with controls must hold
// exactly one target: X under one or two controls (CX / CCX), or Z under one
// control (CZ). When no Measure cell appears a measure-all is appended.
//
// Errors: Syntax (not JSON / no cols array), UnsupportedCell, UnsupportedLayout,
// Validation.
Circuit parse_quirk(std::string_view url_or_json, std::string name = {});

// Percent-decoding of a URL fragment; exposed for tests.
std::string percent_decode(std::string_view text);

}  // namespace qsched
