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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "framecache/error.h"
#include "test_util.h"

namespace framecache {
namespace {

using testing::Gen;
using testing::MakeEntry;
using testing::RefCosine;
using testing::Values;

TEST(MotionAlignmentTest, Fixtures) {
  const std::vector<FeatureVector> window = {{1.0, 0.0}, {1.0, 1.0}};
  // (1 + 1/sqrt(2)) / 2
  EXPECT_NEAR(MotionAlignment({1.0, 0.0}, window),
              (1.0 + 1.0 / std::sqrt(2.0)) / 2.0, 1e-12);
  EXPECT_NEAR(MotionAlignment({1.0, 0.0}, window), 0.85355, 1e-5);
  // (0 + 1/sqrt(2)) / 2
  EXPECT_NEAR(MotionAlignment({0.0, 1.0}, window), 0.35355, 1e-5);
  EXPECT_THROW(MotionAlignment({1.0, 0.0}, {}), Error);
}

TEST(SelectReferenceTest, Fixtures) {
  const std::vector<FeatureVector> poses = {{1.0, 0.0}, {0.0, 1.0}};
  const std::vector<FeatureVector> window = {{1.0, 0.0}, {1.0, 1.0}};
  const MatchResult m = SelectReference(poses, window);
  EXPECT_EQ(m.selected_slot, 0u);
  ASSERT_EQ(m.per_slot_scores.size(), 2u);
  EXPECT_NEAR(m.per_slot_scores[1], 0.35355, 1e-5);
  EXPECT_EQ(m.selected_score, m.per_slot_scores[0]);

  const std::vector<FeatureVector> flipped = {{0.0, 1.0}, {1.0, 0.0}};
  EXPECT_EQ(SelectReference(flipped, window).selected_slot, 1u);
}

TEST(SelectReferenceTest, SingletonAndTies) {
  const std::vector<FeatureVector> one = {{0.0, 1.0}};
  const std::vector<FeatureVector> window = {{1.0, 0.0}};
  EXPECT_EQ(SelectReference(one, window).selected_slot, 0u);

  const std::vector<FeatureVector> same = {{1.0, 1.0}, {2.0, 2.0}, {1.0, 1.0}};
  EXPECT_EQ(SelectReference(same, window).selected_slot, 0u);
  const std::vector<FeatureVector> later = {{0.0, 1.0}, {1.0, 0.0}, {1.0, 0.0}};
  EXPECT_EQ(SelectReference(later, window).selected_slot, 1u);
}

TEST(SelectReferenceTest, Errors) {
  const std::vector<FeatureVector> none;
  const std::vector<FeatureVector> window = {{1.0, 0.0}};
  try {
    SelectReference(none, window);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyCache);
  }
  const std::vector<FeatureVector> poses = {{1.0, 0.0}};
  EXPECT_THROW(SelectReference(poses, none), Error);
  const std::vector<FeatureVector> wide = {{1.0, 0.0, 0.0}};
  EXPECT_THROW(SelectReference(poses, wide), Error);
}

TEST(SelectReferenceTest, CacheOverloadUsesPoses) {
  ReferenceCache cache(MakeEntry("a", {1.0, 0.0}, {0.0, 1.0}),
                       CachePolicyConfig{4, 1.0});
  cache.Append(MakeEntry("b", {0.0, 1.0}, {1.0, 0.0}, 1));
  const std::vector<FeatureVector> window = {{1.0, 0.1}};
  EXPECT_EQ(SelectReference(cache, window).selected_slot, 1u);
}

// Averaging cosines is not the same as the cosine to the averaged window:
// poses e1 and e2 against a reference at e1 give 0.5 versus 1/sqrt(2).
TEST(SelectReferenceTest, AveragesCosinesNotPoses) {
  const std::vector<FeatureVector> window = {{1.0, 0.0}, {0.0, 1.0}};
  EXPECT_NEAR(MotionAlignment({1.0, 0.0}, window), 0.5, 1e-15);
  EXPECT_GT(std::abs(MotionAlignment({1.0, 0.0}, window) - 1.0 / std::sqrt(2.0)),
            0.2);
}

struct Instance {
  std::vector<FeatureVector> poses;
  std::vector<FeatureVector> window;
};

Instance RandomInstance(Gen& gen) {
  Instance in;
  const size_t d = gen.Int(2, 16);
  const size_t c = gen.Int(1, 16);
  const size_t w = gen.Int(1, 32);
  for (size_t i = 0; i < c; ++i) in.poses.push_back(gen.Normal(d));
  for (size_t i = 0; i < w; ++i) in.window.push_back(gen.Normal(d));
  return in;
}

FeatureVector Scaled(const FeatureVector& v, double c) {
  std::vector<double> out = Values(v);
  for (double& x : out) x *= c;
  return FeatureVector(std::move(out));
}

TEST(SelectReferencePropertyTest, ScaleInvariance) {
  Gen gen(21);
  for (int trial = 0; trial < 100; ++trial) {
    Instance in = RandomInstance(gen);
    const MatchResult base = SelectReference(in.poses, in.window);
    for (auto& p : in.poses) p = Scaled(p, std::exp(gen.Real(-5.0, 5.0)));
    for (auto& p : in.window) p = Scaled(p, std::exp(gen.Real(-5.0, 5.0)));
    const MatchResult scaled = SelectReference(in.poses, in.window);
    // Rescaling may reorder near-equal scores; only a genuine tie can flip.
    const double margin =
        base.selected_score -
        [&] {
          double second = -2.0;
          for (size_t i = 0; i < base.per_slot_scores.size(); ++i) {
            if (i != base.selected_slot) {
              second = std::max(second, base.per_slot_scores[i]);
            }
          }
          return second;
        }();
    if (margin > 1e-9) EXPECT_EQ(scaled.selected_slot, base.selected_slot);
    for (size_t i = 0; i < base.per_slot_scores.size(); ++i) {
      EXPECT_NEAR(scaled.per_slot_scores[i], base.per_slot_scores[i], 1e-9);
    }
  }
}

TEST(SelectReferencePropertyTest, WindowPermutationInvariance) {
  Gen gen(22);
  for (int trial = 0; trial < 100; ++trial) {
    Instance in = RandomInstance(gen);
    const MatchResult base = SelectReference(in.poses, in.window);
    std::shuffle(in.window.begin(), in.window.end(), gen.engine());
    const MatchResult shuffled = SelectReference(in.poses, in.window);
    EXPECT_EQ(shuffled.selected_slot, base.selected_slot);
    for (size_t i = 0; i < base.per_slot_scores.size(); ++i) {
      EXPECT_NEAR(shuffled.per_slot_scores[i], base.per_slot_scores[i], 1e-12);
    }
  }
}

TEST(SelectReferencePropertyTest, AgreesWithReferenceMean) {
  Gen gen(23);
  for (int trial = 0; trial < 200; ++trial) {
    const Instance in = RandomInstance(gen);
    const MatchResult m = SelectReference(in.poses, in.window);
    double best_score = -2.0;
    for (size_t i = 0; i < in.poses.size(); ++i) {
      double sum = 0.0;
      for (const auto& t : in.window) sum += RefCosine(Values(in.poses[i]), Values(t));
      const double mean = sum / static_cast<double>(in.window.size());
      EXPECT_NEAR(m.per_slot_scores[i], mean, 1e-12);
      best_score = std::max(best_score, mean);
    }
    EXPECT_NEAR(m.selected_score, best_score, 1e-12);
    EXPECT_EQ(m.per_slot_scores[m.selected_slot], m.selected_score);
    for (double s : m.per_slot_scores) EXPECT_LE(s, m.selected_score);
  }
}

}  // namespace
}  // namespace framecache
