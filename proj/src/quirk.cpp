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

#include "qsched/quirk.hpp"

#include <algorithm>
#include <limits>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qsched/error.hpp"

namespace qsched {
namespace {

using nlohmann::json;

constexpr std::string_view kControl = "\xE2\x80\xA2";  // U+2022 BULLET
constexpr std::string_view kFragment = "#circuit=";

enum class Cell { Identity, Control, Measure, Gate };

struct ParsedCell {
  Cell type = Cell::Identity;
  GateKind kind = GateKind::X;
  std::string token;
};

ParsedCell classify(const json& cell, std::size_t col, std::size_t row) {
  const std::string where =
      " (column " + std::to_string(col) + ", row " + std::to_string(row) + ")";
  if (cell.is_number_integer() && cell.get<long long>() == 1) return {};
  if (!cell.is_string()) {
    throw Error(ErrorCode::UnsupportedCell, "unsupported cell " + cell.dump() + where, cell.dump());
  }
  const auto token = cell.get<std::string>();
  if (token == "1") return {};
  if (token == kControl) return {Cell::Control, GateKind::X, token};
  if (token == "Measure") return {Cell::Measure, GateKind::MEASURE, token};
  static const std::pair<std::string_view, GateKind> kGates[] = {
      {"H", GateKind::H}, {"X", GateKind::X}, {"Y", GateKind::Y},
      {"Z", GateKind::Z}, {"S", GateKind::S}, {"T", GateKind::T},
  };
  for (const auto& [name, kind] : kGates) {
    if (token == name) return {Cell::Gate, kind, token};
  }
  throw Error(ErrorCode::UnsupportedCell, "unsupported cell \"" + token + "\"" + where, token);
}

}  // namespace

std::string percent_decode(std::string_view text) {
  auto hex = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '%' && i + 2 < text.size() && hex(text[i + 1]) >= 0 &&
        hex(text[i + 2]) >= 0) {
      out.push_back(static_cast<char>(hex(text[i + 1]) * 16 + hex(text[i + 2])));
      i += 2;
    } else {
      out.push_back(text[i]);
    }
  }
  return out;
}

Circuit parse_quirk(std::string_view url_or_json, std::string name) {
  std::string body;
  if (const auto at = url_or_json.find(kFragment); at != std::string_view::npos) {
    body = percent_decode(url_or_json.substr(at + kFragment.size()));
  } else {
    body = std::string(url_or_json);
  }

  json doc = json::parse(body, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) throw Error(ErrorCode::Syntax, "Quirk circuit is not valid JSON");
  if (!doc.is_object() || !doc.contains("cols") || !doc["cols"].is_array()) {
    throw Error(ErrorCode::Syntax, "Quirk circuit must be an object with a \"cols\" array");
  }

  Circuit circuit;
  circuit.name = std::move(name);
  std::size_t rows = 0;
  bool measured = false;

  const json& cols = doc["cols"];
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (!cols[c].is_array()) {
      throw Error(ErrorCode::Syntax, "Quirk column " + std::to_string(c) + " is not an array");
    }
    std::vector<std::size_t> controls;
    std::vector<std::pair<std::size_t, ParsedCell>> targets;
    bool column_measures = false;
    for (std::size_t r = 0; r < cols[c].size(); ++r) {
      ParsedCell cell = classify(cols[c][r], c, r);
      if (cell.type == Cell::Identity) continue;
      rows = std::max(rows, r + 1);
      if (cell.type == Cell::Control) {
        controls.push_back(r);
      } else {
        column_measures |= cell.type == Cell::Measure;
        targets.emplace_back(r, std::move(cell));
      }
    }
    const std::string where = "column " + std::to_string(c);
    if (controls.empty()) {
      for (auto& [row, cell] : targets) {
        if (cell.type == Cell::Measure) {
          circuit.instructions.push_back({GateKind::MEASURE, {row}, {}, row});
          measured = true;
        } else {
          circuit.instructions.push_back({cell.kind, {row}, {}, std::nullopt});
        }
      }
      continue;
    }
    if (column_measures) {
      throw Error(ErrorCode::UnsupportedLayout, where + ": controlled measurement");
    }
    if (controls.size() > 2) {
      throw Error(ErrorCode::UnsupportedLayout,
                  where + ": more than two controls (only up to CCX is supported)");
    }
    if (targets.size() != 1) {
      throw Error(ErrorCode::UnsupportedLayout,
                  where + ": controlled column must have exactly one target");
    }
    const auto& [row, cell] = targets.front();
    std::vector<std::size_t> qubits = controls;
    qubits.push_back(row);
    if (cell.kind == GateKind::X) {
      circuit.instructions.push_back(
          {controls.size() == 1 ? GateKind::CX : GateKind::CCX, qubits, {}, std::nullopt});
    } else if (cell.kind == GateKind::Z && controls.size() == 1) {
      circuit.instructions.push_back({GateKind::CZ, qubits, {}, std::nullopt});
    } else {
      throw Error(ErrorCode::UnsupportedLayout,
                  where + ": controlled \"" + cell.token + "\" is not supported");
    }
  }

  if (rows == 0) throw Error(ErrorCode::Validation, "Quirk circuit has no gates");
  circuit.num_qubits = rows;
  circuit.num_clbits = rows;
  if (!measured) {
    for (std::size_t q = 0; q < rows; ++q) {
      circuit.instructions.push_back({GateKind::MEASURE, {q}, {}, q});
    }
  }
  validate(circuit, std::numeric_limits<std::size_t>::max());
  return circuit;
}

}  // namespace qsched
