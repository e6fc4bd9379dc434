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

#include <stdexcept>
#include <string>
#include <string_view>

namespace qsched {

// Every failure raised by the library carries one of these codes. The C API
// maps them one-to-one onto qs_status values, so the order is part of the ABI.
enum class ErrorCode : int {
  Syntax = 1,
  UnsupportedGate,
  UnsupportedCell,
  UnsupportedLayout,
  Index,
  Validation,
  TooWide,
  EmptyBatch,
  LengthMismatch,
  CapacityExceeded,
  InvalidShots,
  WidthMismatch,
  EmptyDistribution,
  Backend,
  NotFound,
  Io,
  Connection,
  Api,
  InvalidArgument,
  Internal,
};

std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string detail = {})
      : std::runtime_error(message), code_(code), detail_(std::move(detail)) {}

  ErrorCode code() const noexcept { return code_; }
  // Free-form context: source position, offending job id, capacity value.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace qsched
