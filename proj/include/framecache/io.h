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

//
// File formats. All of them are line-delimited JSON rendered by DumpJson.
//
// Stream (.fcs):
//   {"version":"fcs/1","d_a":D_A,"d_p":D_P[,"source":{...}]}
//   {"index":0,"frame_id":"...","appearance":[...],"pose":[...],
//    "scores":{"clip":c,"musiq":m}?,"raster":{"w":W,"h":H,"data":[...]}?}
//   ...
// The optional header "source" object is free-form provenance written by
// extraction tools and ignored by the engine. Any other unknown key is an
// error. Record indices must run 0..N-1 in file order.
//
// Trace (.fct): one event per line, {"kind":K,"index":I,<payload>}. The Init
// event carries "version":"fct/1".
//
// Snapshot (.json): a single object listing the cache slots in order:
//   {"version":"fcsnap/1","capacity":C,"redundancy_threshold":T,
//    "d_a":..,"d_p":..,"entries":[{"slot":0,"frame_id":..,"appearance":[..],
//    "pose":[..],"score":..,"admitted_at":..},...]}
// The similarity matrix is not stored; loading rebuilds it.
//

#ifndef FRAMECACHE_IO_H_
#define FRAMECACHE_IO_H_

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "framecache/cache.h"
#include "framecache/pipeline.h"
#include "framecache/stream.h"

namespace framecache {

inline constexpr char kSnapshotVersion[] = "fcsnap/1";

// Errors carry the 1-based line number in Error::index(): kParseError for
// malformed JSON, kSchemaViolation for missing/unknown/mistyped fields,
// kDimensionMismatch for vectors that disagree with the header.
FrameStream ParseStream(std::istream& in);
FrameStream ReadStreamFile(const std::filesystem::path& path);

void WriteStream(const FrameStream& stream, std::ostream& out);
void WriteStreamFile(const FrameStream& stream,
                     const std::filesystem::path& path);

// Throws kSinkError if the sink fails.
void WriteTrace(std::span<const TraceEvent> events, std::ostream& out);
void WriteTraceFile(std::span<const TraceEvent> events,
                    const std::filesystem::path& path);
std::string TraceToString(std::span<const TraceEvent> events);

std::vector<TraceEvent> ParseTrace(std::istream& in);
std::vector<TraceEvent> ReadTraceFile(const std::filesystem::path& path);

Json SnapshotJson(const ReferenceCache& cache);
void WriteSnapshotFile(const ReferenceCache& cache,
                       const std::filesystem::path& path);
ReferenceCache CacheFromSnapshot(const Json& snapshot);
ReferenceCache ReadSnapshotFile(const std::filesystem::path& path);

}  // namespace framecache

#endif  // FRAMECACHE_IO_H_
