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

#include "framecache/pipeline.h"

#include <algorithm>
#include <exception>
#include <string>
#include <utility>

#include "framecache/error.h"
#include "framecache/match.h"

namespace framecache {
namespace {

constexpr Policy kAllPolicies[] = {Policy::kFrameCache, Policy::kStaticFirst,
                                   Policy::kFifo, Policy::kMostRecent};

constexpr EventKind kAllKinds[] = {
    EventKind::kInit,     EventKind::kWindowMatched, EventKind::kScreened,
    EventKind::kInserted, EventKind::kReplaced,      EventKind::kRejected,
    EventKind::kSummary};

Json GainsJson(const std::vector<SlotGain>& gains) {
  Json out = Json::array();
  for (const SlotGain& g : gains) {
    out.push_back(Json{{"slot", g.slot}, {"gain", g.gain}});
  }
  return out;
}

// Rethrows any engine error raised while handling record `index` as
// MalformedRecord so the CLI can point at the offending line.
template <typename Fn>
auto ForRecord(int64_t index, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kMalformedRecord) throw;
    throw Error(ErrorCode::kMalformedRecord,
                "record " + std::to_string(index) + ": " + e.what(), -1, -1,
                index);
  }
}

CacheEntry EntryFor(const FrameRecord& record, double score) {
  return CacheEntry{record.frame_id, record.appearance, record.pose, score,
                    record.index};
}

// Baseline victim: the oldest (fifo) or newest (most_recent) non-pinned slot.
size_t BaselineVictim(const ReferenceCache& cache, Policy policy) {
  size_t victim = 1;
  for (size_t i = 2; i < cache.size(); ++i) {
    const int64_t a = cache.entry(i).admitted_at;
    const int64_t best = cache.entry(victim).admitted_at;
    if (policy == Policy::kFifo ? a < best : a > best) victim = i;
  }
  return victim;
}

class Runner {
 public:
  Runner(const FrameStream& stream, const RunConfig& config,
         StepObserver* observer, ReferenceCache cache, ScreenState state)
      : stream_(stream),
        config_(config),
        observer_(observer),
        cache_(std::move(cache)),
        state_(state) {
    summary_.hits.assign(config_.cache.capacity, 0);
  }

  RunResult Run() {
    const FrameRecord& first = stream_.records[0];
    Emit(EventKind::kInit, 0,
         Json{{"version", kTraceVersion},
              {"frame_id", first.frame_id},
              {"policy", PolicyName(config_.policy)},
              {"lambda", config_.screen.lambda},
              {"alpha", config_.screen.alpha},
              {"capacity", config_.cache.capacity},
              {"redundancy_threshold", config_.cache.redundancy_threshold},
              {"window", config_.window},
              {"d_a", stream_.d_a},
              {"d_p", stream_.d_p},
              {"s0", state_.s0},
              {"tau", state_.tau}});

    const size_t n = stream_.records.size();
    for (size_t start = 1; start < n; start += config_.window) {
      const size_t end = std::min(n, start + config_.window);
      MatchWindow(start, end);
      for (size_t i = start; i < end; ++i) ProcessFrame(stream_.records[i]);
    }

    summary_.cache_size = cache_.size();
    if (cache_.size() >= 2) {
      summary_.mean_pairwise_similarity = MeanPairwiseSimilarity(cache_);
    }
    Json slots = Json::array();
    for (const CacheEntry& e : cache_.entries()) slots.push_back(e.frame_id);
    Emit(EventKind::kSummary, static_cast<int64_t>(n - 1),
         Json{{"windows", summary_.windows},
              {"admitted", summary_.admitted},
              {"filtered", summary_.filtered},
              {"inserted", summary_.inserted},
              {"replaced", summary_.replaced},
              {"rejected", summary_.rejected},
              {"cache_size", summary_.cache_size},
              {"mean_pairwise_similarity",
               summary_.mean_pairwise_similarity
                   ? Json(*summary_.mean_pairwise_similarity)
                   : Json(nullptr)},
              {"hits", summary_.hits},
              {"slots", std::move(slots)}});
    return RunResult{std::move(events_), std::move(summary_),
                     std::move(cache_)};
  }

 private:
  void Emit(EventKind kind, int64_t index, Json payload) {
    events_.push_back(TraceEvent{kind, index, std::move(payload)});
  }

  void MatchWindow(size_t start, size_t end) {
    const int64_t index = stream_.records[start].index;
    MatchResult match = ForRecord(index, [&] {
      std::vector<FeatureVector> targets;
      targets.reserve(end - start);
      for (size_t i = start; i < end; ++i) {
        targets.push_back(stream_.records[i].pose);
      }
      return SelectReference(cache_, targets);
    });
    ++summary_.windows;
    ++summary_.hits[match.selected_slot];
    Emit(EventKind::kWindowMatched, index,
         Json{{"window_start", start},
              {"window_len", end - start},
              {"selected_slot", match.selected_slot},
              {"selected_frame_id",
               cache_.entry(match.selected_slot).frame_id},
              {"selected_score", match.selected_score},
              {"scores", match.per_slot_scores}});
  }

  void ProcessFrame(const FrameRecord& record) {
    const int64_t index = record.index;
    const ScreenDecision screened = ForRecord(index, [&] {
      return ScreenFrame(ResolveScores(record), state_, config_.screen);
    });
    Emit(EventKind::kScreened, index,
         Json{{"frame_id", record.frame_id},
              {"score", screened.score},
              {"tau", state_.tau},
              {"admitted", screened.admitted()}});
    if (!screened.admitted()) {
      ++summary_.filtered;
      return;
    }
    ++summary_.admitted;
    if (config_.policy == Policy::kStaticFirst) return;

    CacheEntry candidate = EntryFor(record, screened.score);
    std::optional<ReferenceCache> before;
    if (observer_ != nullptr) before.emplace(cache_);
    std::vector<std::string> ids_before;
    if (cache_.full()) {
      for (const CacheEntry& e : cache_.entries()) ids_before.push_back(e.frame_id);
    }
    const ReplacementDecision decision =
        ForRecord(index, [&] { return Apply(candidate); });
    if (observer_ != nullptr) {
      observer_->OnCacheStep(index, *before, candidate, decision, cache_);
    }
    Record(record, decision, ids_before);
  }

  ReplacementDecision Apply(const CacheEntry& candidate) {
    if (config_.policy == Policy::kFrameCache) return cache_.Insert(candidate);

    ReplacementDecision decision;
    if (!cache_.full()) {
      decision.outcome = CacheOutcome::kInserted;
      decision.slot = cache_.Append(candidate);
      return decision;
    }
    // Baselines replace unconditionally; the gains are reported for
    // comparison only.
    decision.gains = cache_.Gains(cache_.SimilarityVector(candidate.appearance));
    decision.outcome = CacheOutcome::kReplaced;
    decision.slot = BaselineVictim(cache_, config_.policy);
    decision.gain = decision.gains[decision.slot - 1].gain;
    cache_.ReplaceSlot(decision.slot, candidate);
    return decision;
  }

  void Record(const FrameRecord& record, const ReplacementDecision& decision,
              const std::vector<std::string>& ids_before) {
    const int64_t index = record.index;
    switch (decision.outcome) {
      case CacheOutcome::kInserted:
        ++summary_.inserted;
        Emit(EventKind::kInserted, index,
             Json{{"frame_id", record.frame_id}, {"slot", decision.slot}});
        break;
      case CacheOutcome::kReplaced:
        ++summary_.replaced;
        Emit(EventKind::kReplaced, index,
             Json{{"frame_id", record.frame_id},
                  {"evicted_slot", decision.slot},
                  {"evicted_frame_id", ids_before[decision.slot]},
                  {"gain", decision.gain},
                  {"gains", GainsJson(decision.gains)}});
        break;
      case CacheOutcome::kRejected:
        ++summary_.rejected;
        Emit(EventKind::kRejected, index,
             Json{{"frame_id", record.frame_id},
                  {"best_gain", decision.gain},
                  {"gains", GainsJson(decision.gains)}});
        break;
    }
  }

  const FrameStream& stream_;
  const RunConfig& config_;
  StepObserver* observer_;
  ReferenceCache cache_;
  ScreenState state_;
  RunSummary summary_;
  std::vector<TraceEvent> events_;
};

}  // namespace

std::string_view PolicyName(Policy policy) {
  switch (policy) {
    case Policy::kFrameCache: return "framecache";
    case Policy::kStaticFirst: return "static_first";
    case Policy::kFifo: return "fifo";
    case Policy::kMostRecent: return "most_recent";
  }
  return "unknown";
}

Policy ParsePolicy(std::string_view name) {
  for (Policy p : kAllPolicies) {
    if (PolicyName(p) == name) return p;
  }
  throw Error(ErrorCode::kConfigError,
              "unknown policy '" + std::string(name) + "'");
}

std::string_view EventKindName(EventKind kind) {
  switch (kind) {
    case EventKind::kInit: return "Init";
    case EventKind::kWindowMatched: return "WindowMatched";
    case EventKind::kScreened: return "Screened";
    case EventKind::kInserted: return "Inserted";
    case EventKind::kReplaced: return "Replaced";
    case EventKind::kRejected: return "Rejected";
    case EventKind::kSummary: return "Summary";
  }
  return "Unknown";
}

EventKind ParseEventKind(std::string_view name) {
  for (EventKind k : kAllKinds) {
    if (EventKindName(k) == name) return k;
  }
  throw Error(ErrorCode::kSchemaViolation,
              "unknown event kind '" + std::string(name) + "'");
}

void ValidateRunConfig(const RunConfig& config) {
  ValidateScreenConfig(config.screen);
  ValidateCacheConfig(config.cache);
  if (config.window < 1) {
    throw Error(ErrorCode::kConfigError, "window must be at least 1");
  }
}

RunResult RunStream(const FrameStream& stream, const RunConfig& config,
                    StepObserver* observer) {
  ValidateRunConfig(config);
  if (stream.records.empty()) {
    throw Error(ErrorCode::kEmptyStream, "stream has no records");
  }
  const FrameRecord& first = stream.records[0];
  const ScreenState state = ForRecord(first.index, [&] {
    return InitScreenState(ResolveScores(first), config.screen);
  });
  ReferenceCache cache = ForRecord(first.index, [&] {
    return ReferenceCache(EntryFor(first, state.s0), config.cache);
  });
  return Runner(stream, config, observer, std::move(cache), state).Run();
}

RunResult RunWithPolicy(const FrameStream& stream, RunConfig config,
                        Policy policy) {
  config.policy = policy;
  return RunStream(stream, config);
}

std::vector<PolicyReport> ComparePolicies(std::span<const NamedStream> streams,
                                          const RunConfig& config,
                                          std::span<const Policy> policies) {
  ValidateRunConfig(config);
  if (streams.empty()) {
    throw Error(ErrorCode::kEmptyStream, "no streams to compare");
  }
  const size_t n_streams = streams.size();
  const int64_t jobs = static_cast<int64_t>(policies.size() * n_streams);
  std::vector<std::optional<RunSummary>> results(jobs);
  std::vector<std::exception_ptr> failures(jobs);

#pragma omp parallel for schedule(dynamic)
  for (int64_t job = 0; job < jobs; ++job) {
    try {
      const Policy policy = policies[job / n_streams];
      results[job] =
          RunWithPolicy(streams[job % n_streams].stream, config, policy)
              .summary;
    } catch (...) {
      failures[job] = std::current_exception();
    }
  }
  for (const std::exception_ptr& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }

  std::vector<PolicyReport> reports;
  for (size_t p = 0; p < policies.size(); ++p) {
    PolicyReport report;
    report.policy = policies[p];
    report.hits.assign(config.cache.capacity, 0);
    double similarity_total = 0.0;
    for (size_t s = 0; s < n_streams; ++s) {
      const RunSummary& run = *results[p * n_streams + s];
      report.inserted += run.inserted;
      report.replaced += run.replaced;
      report.rejected += run.rejected;
      for (size_t i = 0; i < run.hits.size(); ++i) report.hits[i] += run.hits[i];
      if (run.mean_pairwise_similarity) {
        similarity_total += *run.mean_pairwise_similarity;
        ++report.streams_with_similarity;
      }
      report.per_stream.push_back(StreamFigures{
          streams[s].name, run.inserted, run.replaced, run.rejected,
          run.cache_size, run.mean_pairwise_similarity});
    }
    if (report.streams_with_similarity > 0) {
      report.mean_final_similarity =
          similarity_total / static_cast<double>(report.streams_with_similarity);
    }
    reports.push_back(std::move(report));
  }
  return reports;
}

}  // namespace framecache
