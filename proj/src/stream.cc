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

#include "framecache/stream.h"

#include <algorithm>
#include <string>

#include "framecache/error.h"

namespace framecache {

QualityScores ResolveScores(const FrameRecord& record) {
  if (record.scores) {
    ValidateScores(*record.scores);
    return *record.scores;
  }
  if (record.raster) {
    return ProxyScores(record.raster->data, record.raster->width,
                       record.raster->height);
  }
  throw Error(ErrorCode::kMalformedRecord,
              "record " + std::to_string(record.index) +
                  " has neither scores nor a raster",
              -1, -1, record.index);
}

FrameStream Truncated(const FrameStream& stream, size_t count) {
  FrameStream out;
  out.version = stream.version;
  out.d_a = stream.d_a;
  out.d_p = stream.d_p;
  const size_t n = std::min(count, stream.records.size());
  out.records.assign(stream.records.begin(), stream.records.begin() + n);
  return out;
}

}  // namespace framecache
