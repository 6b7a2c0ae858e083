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

#include "framecache/match.h"

#include "framecache/error.h"
#include "framecache/kernels.h"

namespace framecache {

double MotionAlignment(const FeatureVector& entry_pose,
                       std::span<const FeatureVector> targets) {
  const FeatureVector refs[] = {entry_pose};
  return kernels::serial::MeanAlignment(refs, targets)[0];
}

MatchResult SelectReference(std::span<const FeatureVector> poses,
                            std::span<const FeatureVector> targets) {
  if (poses.empty()) throw Error(ErrorCode::kEmptyCache, "no cached poses");
  MatchResult result;
  result.per_slot_scores = kernels::omp::MeanAlignment(poses, targets);
  result.selected_slot = 0;
  result.selected_score = result.per_slot_scores[0];
  for (size_t i = 1; i < result.per_slot_scores.size(); ++i) {
    if (result.per_slot_scores[i] > result.selected_score) {
      result.selected_slot = i;
      result.selected_score = result.per_slot_scores[i];
    }
  }
  return result;
}

MatchResult SelectReference(const ReferenceCache& cache,
                            std::span<const FeatureVector> targets) {
  std::vector<FeatureVector> poses;
  poses.reserve(cache.size());
  for (const CacheEntry& e : cache.entries()) poses.push_back(e.pose);
  return SelectReference(poses, targets);
}

}  // namespace framecache
