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

#ifndef FRAMECACHE_STREAM_H_
#define FRAMECACHE_STREAM_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "framecache/features.h"
#include "framecache/screen.h"

namespace framecache {

inline constexpr char kStreamVersion[] = "fcs/1";

// Row-major grayscale raster, intensities in [0, 1].
struct Raster {
  size_t width = 0;
  size_t height = 0;
  std::vector<double> data;

  friend bool operator==(const Raster&, const Raster&) = default;
};

struct FrameRecord {
  int64_t index = 0;
  std::string frame_id;
  FeatureVector appearance;
  FeatureVector pose;
  std::optional<QualityScores> scores;
  std::optional<Raster> raster;

  friend bool operator==(const FrameRecord&, const FrameRecord&) = default;
};

struct FrameStream {
  std::string version = kStreamVersion;
  size_t d_a = 0;
  size_t d_p = 0;
  std::vector<FrameRecord> records;

  friend bool operator==(const FrameStream&, const FrameStream&) = default;
};

// Precomputed scores when present, otherwise proxy scores from the raster.
// Throws kMalformedRecord when the record carries neither.
QualityScores ResolveScores(const FrameRecord& record);

// Copy of the first `count` records (count clamped to the stream length).
FrameStream Truncated(const FrameStream& stream, size_t count);

}  // namespace framecache

#endif  // FRAMECACHE_STREAM_H_
