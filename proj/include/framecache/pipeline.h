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
// Screen -> Cache -> Match orchestration over a replayed frame stream.
//
// Record 0 is the initial reference: it bypasses screening, defines the
// threshold and is pinned in slot 0. The remaining records are split into
// consecutive windows of `window` frames (the last one may be short). For each
// window the reference is matched first, against the cache as it stands at the
// window start, using the window's poses as the target motion. Then every
// frame of the window is screened and, if admitted, offered to the cache
// immediately.
//
// A run is sequential. Distinct runs are independent and may execute
// concurrently; ComparePolicies does so.
//

#ifndef FRAMECACHE_PIPELINE_H_
#define FRAMECACHE_PIPELINE_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "framecache/cache.h"
#include "framecache/json.h"
#include "framecache/screen.h"
#include "framecache/stream.h"

namespace framecache {

inline constexpr char kTraceVersion[] = "fct/1";

enum class Policy { kFrameCache, kStaticFirst, kFifo, kMostRecent };

std::string_view PolicyName(Policy policy);
// Throws kConfigError for an unknown name.
Policy ParsePolicy(std::string_view name);

struct RunConfig {
  ScreenConfig screen;
  CachePolicyConfig cache;
  size_t window = 16;
  Policy policy = Policy::kFrameCache;
};

void ValidateRunConfig(const RunConfig& config);

enum class EventKind {
  kInit,
  kWindowMatched,
  kScreened,
  kInserted,
  kReplaced,
  kRejected,
  kSummary,
};

std::string_view EventKindName(EventKind kind);
EventKind ParseEventKind(std::string_view name);

struct TraceEvent {
  EventKind kind = EventKind::kInit;
  int64_t index = 0;
  Json payload = Json::object();  // kind-specific, insertion-ordered

  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

struct RunSummary {
  size_t windows = 0;
  size_t admitted = 0;
  size_t filtered = 0;
  size_t inserted = 0;
  size_t replaced = 0;
  size_t rejected = 0;
  size_t cache_size = 0;
  std::optional<double> mean_pairwise_similarity;  // absent below 2 entries
  std::vector<int64_t> hits;                        // match selections per slot
};

struct RunResult {
  std::vector<TraceEvent> events;
  RunSummary summary;
  ReferenceCache cache;
};

// Receives every cache step of a run. `before` is the cache state the
// candidate was evaluated against; `after` the state once applied.
class StepObserver {
 public:
  virtual ~StepObserver() = default;
  virtual void OnCacheStep(int64_t index, const ReferenceCache& before,
                           const CacheEntry& candidate,
                           const ReplacementDecision& decision,
                           const ReferenceCache& after) = 0;
};

// Runs the stream under config.policy. Throws kEmptyStream, kConfigError, or
// kMalformedRecord(index) wrapping the failing record's error.
RunResult RunStream(const FrameStream& stream, const RunConfig& config,
                    StepObserver* observer = nullptr);

RunResult RunWithPolicy(const FrameStream& stream, RunConfig config,
                        Policy policy);

struct NamedStream {
  std::string name;
  FrameStream stream;
};

struct StreamFigures {
  std::string name;
  size_t inserted = 0;
  size_t replaced = 0;
  size_t rejected = 0;
  size_t cache_size = 0;
  std::optional<double> mean_pairwise_similarity;
};

struct PolicyReport {
  Policy policy = Policy::kFrameCache;
  // Mean over the streams whose final cache holds at least two entries.
  std::optional<double> mean_final_similarity;
  size_t streams_with_similarity = 0;
  size_t inserted = 0;
  size_t replaced = 0;
  size_t rejected = 0;
  std::vector<int64_t> hits;
  std::vector<StreamFigures> per_stream;  // in input stream order
};

// Runs every (policy, stream) pair, in parallel when OpenMP is available.
// Reports come back in `policies` order, per-stream figures in `streams`
// order: the result is independent of thread scheduling. Throws the error of
// the first failing pair in that order.
std::vector<PolicyReport> ComparePolicies(std::span<const NamedStream> streams,
                                          const RunConfig& config,
                                          std::span<const Policy> policies);

}  // namespace framecache

#endif  // FRAMECACHE_PIPELINE_H_
