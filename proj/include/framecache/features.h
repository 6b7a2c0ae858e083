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
// Feature vectors and cosine similarity.
//
// Multi-axis features (latents, pose maps) are flattened to a single vector
// before they reach the engine; nothing downstream uses tensor structure.
//

#ifndef FRAMECACHE_FEATURES_H_
#define FRAMECACHE_FEATURES_H_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace framecache {

// Norms below this are treated as zero and rejected by CosineSimilarity.
inline constexpr double kMinNorm = 1e-12;

class FeatureVector {
 public:
  FeatureVector() = default;
  explicit FeatureVector(std::vector<double> values)
      : values_(std::move(values)) {}
  FeatureVector(std::initializer_list<double> values) : values_(values) {}

  size_t dim() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double operator[](size_t i) const { return values_[i]; }

  // Euclidean norm, accumulated in index order in double precision.
  double Norm() const;

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;

 private:
  std::vector<double> values_;
};

// Throws kDimensionMismatch(expected, actual) or kNonFiniteComponent(index).
void ValidateVector(const FeatureVector& v, size_t expected_dim);

double Dot(std::span<const double> a, std::span<const double> b);

// a.b / (|a| |b|), clamped to [-1, 1]. Throws kDimensionMismatch when the
// dims differ and kZeroNormVector when either norm is below kMinNorm.
//
// The result is bitwise symmetric in its arguments: both the elementwise
// products and the final norm product commute exactly in IEEE arithmetic.
double CosineSimilarity(const FeatureVector& a, const FeatureVector& b);

// Same contract, with the right operand's norm supplied by the caller. Used
// by the kernels where one norm is reused across a whole row.
double CosineWithNorms(std::span<const double> a, double norm_a,
                       std::span<const double> b, double norm_b);

// Throws kZeroNormVector when v.Norm() < kMinNorm.
void RequirePositiveNorm(const FeatureVector& v);

}  // namespace framecache

#endif  // FRAMECACHE_FEATURES_H_
