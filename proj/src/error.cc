// Copyright 2026 The Authors.
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

#include "framecache/error.h"

#include <string>

namespace framecache {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNonFiniteComponent: return "NonFiniteComponent";
    case ErrorCode::kZeroNormVector: return "ZeroNormVector";
    case ErrorCode::kInvalidScores: return "InvalidScores";
    case ErrorCode::kNegativeScore: return "NegativeScore";
    case ErrorCode::kEmptyRaster: return "EmptyRaster";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kCacheTooSmall: return "CacheTooSmall";
    case ErrorCode::kEmptyGains: return "EmptyGains";
    case ErrorCode::kEmptySequence: return "EmptySequence";
    case ErrorCode::kEmptyCache: return "EmptyCache";
    case ErrorCode::kEmptyStream: return "EmptyStream";
    case ErrorCode::kMalformedRecord: return "MalformedRecord";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kSchemaViolation: return "SchemaViolation";
    case ErrorCode::kSinkError: return "SinkError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message, int64_t expected,
             int64_t actual, int64_t index)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code),
      expected_(expected),
      actual_(actual),
      index_(index) {}

}  // namespace framecache
