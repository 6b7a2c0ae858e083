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
// Redundancy-aware reference cache.
//
// A fixed-capacity buffer whose slot 0 holds the initial input frame for its
// whole lifetime. The buffer maintains the pairwise cosine matrix S over the
// entries' appearance vectors and the off-diagonal row sums r. Once full, a
// candidate x_new with similarity vector s evicts the slot i > 0 with the
// lowest gain
//
//   g_i = sum_j S_ij - 2 r_i + 2 (sum_j s_j - s_i)
//
// (the first sum includes the diagonal, so it equals r_i + 1), provided that
// gain is strictly below the redundancy threshold; otherwise the candidate is
// discarded. Equivalently the evicted slot maximizes r_i + 2 s_i: the entry
// that is both most redundant inside the cache and closest to the newcomer.
//
// Thread safety: single writer. Const member functions may run concurrently
// with each other but not with Append, ReplaceSlot or Insert.
//

#ifndef FRAMECACHE_CACHE_H_
#define FRAMECACHE_CACHE_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "framecache/features.h"

namespace framecache {

struct CacheEntry {
  std::string frame_id;
  FeatureVector appearance;
  FeatureVector pose;
  double score = 0.0;       // combined quality score at admission
  int64_t admitted_at = 0;  // stream index

  friend bool operator==(const CacheEntry&, const CacheEntry&) = default;
};

struct CachePolicyConfig {
  size_t capacity = 8;
  double redundancy_threshold = 1.0;
};

// Throws kConfigError if capacity < 2 or the threshold is not finite.
void ValidateCacheConfig(const CachePolicyConfig& config);

struct SlotGain {
  size_t slot = 0;
  double gain = 0.0;

  friend bool operator==(const SlotGain&, const SlotGain&) = default;
};

enum class CacheOutcome { kInserted, kReplaced, kRejected };

struct ReplacementDecision {
  CacheOutcome outcome = CacheOutcome::kRejected;
  // Inserted: the new slot. Replaced: the evicted slot. Rejected: unused.
  size_t slot = 0;
  // Replaced: gain of the evicted slot. Rejected: best (lowest) gain.
  double gain = 0.0;
  // Per-slot gains for slots 1..len-1; empty for Inserted.
  std::vector<SlotGain> gains;
};

struct EvictionChoice {
  bool evict = false;
  size_t slot = 0;
  double gain = 0.0;
};

// Argmin over gains, ties to the lowest slot. Evicts iff the minimum is
// strictly below theta. Throws kEmptyGains.
EvictionChoice SelectEviction(std::span<const SlotGain> gains, double theta);

class ReferenceCache {
 public:
  // Throws kConfigError for an invalid config and kZeroNormVector /
  // kNonFiniteComponent for an invalid initial entry.
  ReferenceCache(CacheEntry initial, const CachePolicyConfig& config);

  size_t capacity() const { return config_.capacity; }
  size_t size() const { return entries_.size(); }
  bool full() const { return entries_.size() == config_.capacity; }
  const CachePolicyConfig& config() const { return config_; }
  size_t appearance_dim() const { return entries_[0].appearance.dim(); }
  size_t pose_dim() const { return entries_[0].pose.dim(); }

  std::span<const CacheEntry> entries() const { return entries_; }
  const CacheEntry& entry(size_t slot) const { return entries_.at(slot); }
  double similarity(size_t i, size_t j) const {
    return sim_[i * config_.capacity + j];
  }
  std::span<const double> row_sums() const { return row_sums_; }

  // Dense size() x size() copy of S, row-major.
  std::vector<double> SimilarityMatrix() const;

  // s[j] = cos(x, entries[j].appearance).
  std::vector<double> SimilarityVector(const FeatureVector& x) const;

  // Gains for slots 1..size()-1 from the maintained S and r. Throws
  // kCacheTooSmall if size() < 2, kDimensionMismatch if s_new has the wrong
  // length.
  std::vector<SlotGain> Gains(std::span<const double> s_new) const;

  // Full admission step: append while not full, otherwise compute gains and
  // evict or reject according to the configured threshold.
  ReplacementDecision Insert(CacheEntry candidate);

  // Unconditional mutations for baseline policies. Append throws
  // kConfigError when full; ReplaceSlot throws kConfigError for slot 0 or a
  // slot outside [1, size()).
  size_t Append(CacheEntry candidate);
  void ReplaceSlot(size_t slot, CacheEntry candidate);

 private:
  void ValidateCandidate(const CacheEntry& candidate) const;
  size_t AppendWith(CacheEntry candidate, std::span<const double> s_new);
  void ReplaceWith(size_t slot, CacheEntry candidate,
                   std::span<const double> s_new);

  CachePolicyConfig config_;
  std::vector<CacheEntry> entries_;
  std::vector<double> sim_;  // capacity x capacity, row-major
  std::vector<double> row_sums_;
};

// Verification oracle: everything recomputed from the stored vectors with no
// reuse of maintained state.
struct OracleResult {
  std::vector<double> sim;       // size x size, row-major
  std::vector<double> row_sums;  // r_i = sum_{j != i} S_ij
  std::optional<std::vector<SlotGain>> gains;
};

OracleResult OracleRecompute(const ReferenceCache& cache,
                             const FeatureVector* x_new = nullptr);

// Mean of S_ij over unordered pairs i < j. Throws kCacheTooSmall.
double MeanPairwiseSimilarity(const ReferenceCache& cache);

// Largest elementwise deviation between the maintained (S, r) and the oracle.
double MaxOracleDeviation(const ReferenceCache& cache,
                          const OracleResult& oracle);

}  // namespace framecache

#endif  // FRAMECACHE_CACHE_H_
