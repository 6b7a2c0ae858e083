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

#ifndef FRAMECACHE_ERROR_H_
#define FRAMECACHE_ERROR_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace framecache {

enum class ErrorCode {
  kDimensionMismatch,
  kNonFiniteComponent,
  kZeroNormVector,
  kInvalidScores,
  kNegativeScore,
  kEmptyRaster,
  kConfigError,
  kCacheTooSmall,
  kEmptyGains,
  kEmptySequence,
  kEmptyCache,
  kEmptyStream,
  kMalformedRecord,
  kParseError,
  kSchemaViolation,
  kSinkError,
};

std::string_view ErrorCodeName(ErrorCode code);

// Every failure in the engine surfaces as an Error. The numeric detail fields
// are populated where the failing operation has them (expected/actual for
// dimension mismatches, component index for non-finite values, line or record
// index for stream errors) and are -1 otherwise.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, int64_t expected = -1,
        int64_t actual = -1, int64_t index = -1);

  ErrorCode code() const { return code_; }
  int64_t expected() const { return expected_; }
  int64_t actual() const { return actual_; }
  int64_t index() const { return index_; }

 private:
  ErrorCode code_;
  int64_t expected_;
  int64_t actual_;
  int64_t index_;
};

}  // namespace framecache

#endif  // FRAMECACHE_ERROR_H_
