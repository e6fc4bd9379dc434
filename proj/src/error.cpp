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

#include "qsched/error.hpp"

namespace qsched {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Syntax: return "SyntaxError";
    case ErrorCode::UnsupportedGate: return "UnsupportedGate";
    case ErrorCode::UnsupportedCell: return "UnsupportedCell";
    case ErrorCode::UnsupportedLayout: return "UnsupportedLayout";
    case ErrorCode::Index: return "IndexError";
    case ErrorCode::Validation: return "ValidationError";
    case ErrorCode::TooWide: return "TooWide";
    case ErrorCode::EmptyBatch: return "EmptyBatch";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::CapacityExceeded: return "CapacityExceeded";
    case ErrorCode::InvalidShots: return "InvalidShots";
    case ErrorCode::WidthMismatch: return "WidthMismatch";
    case ErrorCode::EmptyDistribution: return "EmptyDistribution";
    case ErrorCode::Backend: return "BackendError";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::Io: return "IoError";
    case ErrorCode::Connection: return "ConnectionError";
    case ErrorCode::Api: return "ApiError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Internal: return "InternalError";
  }
  return "Unknown";
}

}  // namespace qsched
