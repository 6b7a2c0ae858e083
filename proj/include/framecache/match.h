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
// Motion-consistent reference matching.
//
// Each cached pose is scored by its mean cosine against every pose of the
// upcoming target window. This is a mean of per-frame cosines, not the cosine
// to the mean pose; the two differ in general.
//

#ifndef FRAMECACHE_MATCH_H_
#define FRAMECACHE_MATCH_H_

#include <cstddef>
#include <span>
#include <vector>

#include "framecache/cache.h"
#include "framecache/features.h"

namespace framecache {

struct MatchResult {
  size_t selected_slot = 0;
  double selected_score = 0.0;
  std::vector<double> per_slot_scores;  // indexed by slot
};

// (1/T) sum_t cos(entry_pose, targets[t]). Throws kEmptySequence.
double MotionAlignment(const FeatureVector& entry_pose,
                       std::span<const FeatureVector> targets);

// Scores every slot, slot 0 included; argmax with ties to the lowest slot.
// Throws kEmptyCache if `poses` is empty.
MatchResult SelectReference(std::span<const FeatureVector> poses,
                            std::span<const FeatureVector> targets);

MatchResult SelectReference(const ReferenceCache& cache,
                            std::span<const FeatureVector> targets);

}  // namespace framecache

#endif  // FRAMECACHE_MATCH_H_
