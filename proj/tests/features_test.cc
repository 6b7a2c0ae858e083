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

#include "framecache/features.h"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "framecache/error.h"
#include "framecache/kernels.h"
#include "test_util.h"

namespace framecache {
namespace {

using testing::Gen;
using testing::RefCosine;
using testing::Values;

ErrorCode CodeOf(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::kSinkError;
}

TEST(ValidateVectorTest, AcceptsWellFormed) {
  EXPECT_NO_THROW(ValidateVector(FeatureVector{1.0, 0.0}, 2));
}

TEST(ValidateVectorTest, DimensionMismatchCarriesBothDims) {
  try {
    ValidateVector(FeatureVector{1.0, 0.0}, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
    EXPECT_EQ(e.expected(), 3);
    EXPECT_EQ(e.actual(), 2);
  }
}

TEST(ValidateVectorTest, NonFiniteComponentCarriesIndex) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  try {
    ValidateVector(FeatureVector{nan, 0.0}, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonFiniteComponent);
    EXPECT_EQ(e.index(), 0);
  }
  EXPECT_EQ(CodeOf([] {
              ValidateVector(
                  FeatureVector{0.0, std::numeric_limits<double>::infinity()}, 2);
            }),
            ErrorCode::kNonFiniteComponent);
}

TEST(CosineTest, Fixtures) {
  EXPECT_EQ(CosineSimilarity({1.0, 0.0}, {1.0, 0.0}), 1.0);
  EXPECT_EQ(CosineSimilarity({1.0, 0.0}, {0.0, 1.0}), 0.0);
  // 1/sqrt(2), computed independently.
  EXPECT_NEAR(CosineSimilarity({1.0, 1.0}, {1.0, 0.0}), 0.7071067811865475,
              1e-15);
  EXPECT_NEAR(CosineSimilarity({1.0, 1.0}, {1.0, 0.0}), 1.0 / std::sqrt(2.0),
              1e-15);
}

TEST(CosineTest, Errors) {
  EXPECT_EQ(CodeOf([] { CosineSimilarity({0.0, 0.0}, {1.0, 0.0}); }),
            ErrorCode::kZeroNormVector);
  EXPECT_EQ(CodeOf([] { CosineSimilarity({1.0, 0.0}, {1e-13, 0.0}); }),
            ErrorCode::kZeroNormVector);
  EXPECT_EQ(CodeOf([] { CosineSimilarity({1.0, 0.0}, {1.0, 0.0, 0.0}); }),
            ErrorCode::kDimensionMismatch);
}

TEST(CosineTest, ClampsOvershoot) {
  // Parallel vectors with awkward magnitudes: the raw quotient can land a
  // rounding step outside [-1, 1].
  Gen gen(7);
  for (int trial = 0; trial < 2000; ++trial) {
    const FeatureVector a = gen.Normal(gen.Int(2, 64));
    const double c = gen.Real(1e-3, 1e3);
    std::vector<double> scaled = Values(a);
    std::vector<double> negated = Values(a);
    for (double& x : scaled) x *= c;
    for (double& x : negated) x *= -c;
    const double s = CosineSimilarity(a, FeatureVector(scaled));
    const double n = CosineSimilarity(a, FeatureVector(negated));
    EXPECT_LE(s, 1.0);
    EXPECT_GE(n, -1.0);
    EXPECT_NEAR(s, 1.0, 1e-12);
    EXPECT_NEAR(n, -1.0, 1e-12);
  }
}

TEST(CosinePropertyTest, SymmetryScaleInvarianceRangeAndReference) {
  Gen gen(11);
  for (int trial = 0; trial < 2000; ++trial) {
    const size_t dim = gen.Int(1, 128);
    const FeatureVector a = gen.Normal(dim);
    const FeatureVector b = gen.Normal(dim);
    const double ab = CosineSimilarity(a, b);
    EXPECT_EQ(ab, CosineSimilarity(b, a));  // bitwise
    EXPECT_GE(ab, -1.0);
    EXPECT_LE(ab, 1.0);
    EXPECT_NEAR(ab, RefCosine(Values(a), Values(b)), 1e-12);

    const double c = std::exp(gen.Real(-10.0, 10.0));
    std::vector<double> scaled = Values(a);
    for (double& x : scaled) x *= c;
    EXPECT_NEAR(CosineSimilarity(FeatureVector(scaled), b), ab, 1e-9);
  }
}

}  // namespace
}  // namespace framecache
