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

#include "framecache/cache.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "framecache/error.h"
#include "framecache/kernels.h"

namespace framecache {

void ValidateCacheConfig(const CachePolicyConfig& config) {
  if (config.capacity < 2) {
    throw Error(ErrorCode::kConfigError,
                "capacity must be at least 2 (pinned slot plus one), got " +
                    std::to_string(config.capacity));
  }
  if (!std::isfinite(config.redundancy_threshold)) {
    throw Error(ErrorCode::kConfigError, "redundancy threshold must be finite");
  }
}

EvictionChoice SelectEviction(std::span<const SlotGain> gains, double theta) {
  if (gains.empty()) throw Error(ErrorCode::kEmptyGains, "no gains to select");
  const SlotGain* best = &gains[0];
  for (const SlotGain& g : gains) {
    if (g.gain < best->gain || (g.gain == best->gain && g.slot < best->slot)) {
      best = &g;
    }
  }
  return EvictionChoice{best->gain < theta, best->slot, best->gain};
}

ReferenceCache::ReferenceCache(CacheEntry initial,
                               const CachePolicyConfig& config)
    : config_(config) {
  ValidateCacheConfig(config_);
  ValidateVector(initial.appearance, initial.appearance.dim());
  ValidateVector(initial.pose, initial.pose.dim());
  if (initial.appearance.dim() == 0 || initial.pose.dim() == 0) {
    throw Error(ErrorCode::kDimensionMismatch, "feature dims must be >= 1");
  }
  RequirePositiveNorm(initial.appearance);
  RequirePositiveNorm(initial.pose);
  sim_.assign(config_.capacity * config_.capacity, 0.0);
  sim_[0] = 1.0;
  row_sums_.push_back(0.0);
  entries_.reserve(config_.capacity);
  entries_.push_back(std::move(initial));
}

std::vector<double> ReferenceCache::SimilarityMatrix() const {
  const size_t n = size();
  std::vector<double> out(n * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) out[i * n + j] = similarity(i, j);
  }
  return out;
}

std::vector<double> ReferenceCache::SimilarityVector(
    const FeatureVector& x) const {
  ValidateVector(x, appearance_dim());
  std::vector<FeatureVector> appearances;
  appearances.reserve(size());
  for (const CacheEntry& e : entries_) appearances.push_back(e.appearance);
  return kernels::omp::SimilarityRow(appearances, x);
}

std::vector<SlotGain> ReferenceCache::Gains(
    std::span<const double> s_new) const {
  const size_t n = size();
  if (n < 2) {
    throw Error(ErrorCode::kCacheTooSmall, "gains need at least two entries");
  }
  if (s_new.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch,
                "similarity vector length differs from cache size",
                static_cast<int64_t>(n), static_cast<int64_t>(s_new.size()));
  }
  double s_total = 0.0;
  for (double s : s_new) s_total += s;
  std::vector<SlotGain> gains;
  gains.reserve(n - 1);
  for (size_t i = 1; i < n; ++i) {
    const double r = row_sums_[i];
    gains.push_back({i, (r + 1.0) - 2.0 * r + 2.0 * (s_total - s_new[i])});
  }
  return gains;
}

void ReferenceCache::ValidateCandidate(const CacheEntry& candidate) const {
  ValidateVector(candidate.appearance, appearance_dim());
  ValidateVector(candidate.pose, pose_dim());
  RequirePositiveNorm(candidate.appearance);
  RequirePositiveNorm(candidate.pose);
}

ReplacementDecision ReferenceCache::Insert(CacheEntry candidate) {
  ValidateCandidate(candidate);
  const std::vector<double> s_new = SimilarityVector(candidate.appearance);
  ReplacementDecision decision;
  if (!full()) {
    decision.outcome = CacheOutcome::kInserted;
    decision.slot = AppendWith(std::move(candidate), s_new);
    return decision;
  }
  decision.gains = Gains(s_new);
  const EvictionChoice choice =
      SelectEviction(decision.gains, config_.redundancy_threshold);
  decision.gain = choice.gain;
  if (choice.evict) {
    decision.outcome = CacheOutcome::kReplaced;
    decision.slot = choice.slot;
    ReplaceWith(choice.slot, std::move(candidate), s_new);
  } else {
    decision.outcome = CacheOutcome::kRejected;
  }
  return decision;
}

size_t ReferenceCache::Append(CacheEntry candidate) {
  ValidateCandidate(candidate);
  if (full()) throw Error(ErrorCode::kConfigError, "append to a full cache");
  const std::vector<double> s_new = SimilarityVector(candidate.appearance);
  return AppendWith(std::move(candidate), s_new);
}

void ReferenceCache::ReplaceSlot(size_t slot, CacheEntry candidate) {
  ValidateCandidate(candidate);
  if (slot == 0 || slot >= size()) {
    throw Error(ErrorCode::kConfigError,
                "slot " + std::to_string(slot) + " cannot be replaced");
  }
  const std::vector<double> s_new = SimilarityVector(candidate.appearance);
  ReplaceWith(slot, std::move(candidate), s_new);
}

size_t ReferenceCache::AppendWith(CacheEntry candidate,
                                  std::span<const double> s_new) {
  const size_t k = size();
  const size_t c = config_.capacity;
  double own = 0.0;
  for (size_t j = 0; j < k; ++j) {
    sim_[k * c + j] = s_new[j];
    sim_[j * c + k] = s_new[j];
    row_sums_[j] += s_new[j];
    own += s_new[j];
  }
  sim_[k * c + k] = 1.0;
  row_sums_.push_back(own);
  entries_.push_back(std::move(candidate));
  return k;
}

void ReferenceCache::ReplaceWith(size_t slot, CacheEntry candidate,
                                 std::span<const double> s_new) {
  const size_t n = size();
  const size_t c = config_.capacity;
  double own = 0.0;
  for (size_t j = 0; j < n; ++j) {
    if (j == slot) continue;
    row_sums_[j] += s_new[j] - sim_[slot * c + j];
    sim_[slot * c + j] = s_new[j];
    sim_[j * c + slot] = s_new[j];
    own += s_new[j];
  }
  sim_[slot * c + slot] = 1.0;
  row_sums_[slot] = own;
  entries_[slot] = std::move(candidate);
}

OracleResult OracleRecompute(const ReferenceCache& cache,
                             const FeatureVector* x_new) {
  const size_t n = cache.size();
  std::vector<FeatureVector> appearances;
  appearances.reserve(n);
  for (const CacheEntry& e : cache.entries()) appearances.push_back(e.appearance);

  OracleResult out;
  out.sim = kernels::serial::SimilarityMatrix(appearances);
  out.row_sums.assign(n, 0.0);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      if (j != i) out.row_sums[i] += out.sim[i * n + j];
    }
  }
  if (x_new != nullptr && n >= 2) {
    std::vector<double> s(n);
    double s_total = 0.0;
    for (size_t j = 0; j < n; ++j) {
      s[j] = CosineSimilarity(*x_new, appearances[j]);
      s_total += s[j];
    }
    std::vector<SlotGain> gains;
    for (size_t i = 1; i < n; ++i) {
      double full_row = 0.0;
      for (size_t j = 0; j < n; ++j) full_row += out.sim[i * n + j];
      gains.push_back(
          {i, full_row - 2.0 * out.row_sums[i] + 2.0 * (s_total - s[i])});
    }
    out.gains = std::move(gains);
  }
  return out;
}

double MeanPairwiseSimilarity(const ReferenceCache& cache) {
  const size_t n = cache.size();
  if (n < 2) {
    throw Error(ErrorCode::kCacheTooSmall,
                "pairwise similarity needs at least two entries");
  }
  double sum = 0.0;
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) sum += cache.similarity(i, j);
  }
  return sum / static_cast<double>(n * (n - 1) / 2);
}

double MaxOracleDeviation(const ReferenceCache& cache,
                          const OracleResult& oracle) {
  const size_t n = cache.size();
  double worst = 0.0;
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      worst = std::max(worst,
                       std::abs(cache.similarity(i, j) - oracle.sim[i * n + j]));
    }
    worst = std::max(worst, std::abs(cache.row_sums()[i] - oracle.row_sums[i]));
  }
  return worst;
}

}  // namespace framecache
