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

#include <algorithm>
#include <cmath>
#include <string>

#include "framecache/error.h"

namespace framecache {

double FeatureVector::Norm() const { return std::sqrt(Dot(values_, values_)); }

void ValidateVector(const FeatureVector& v, size_t expected_dim) {
  if (v.dim() != expected_dim) {
    throw Error(ErrorCode::kDimensionMismatch,
                "expected dim " + std::to_string(expected_dim) + ", got " +
                    std::to_string(v.dim()),
                static_cast<int64_t>(expected_dim),
                static_cast<int64_t>(v.dim()));
  }
  for (size_t i = 0; i < v.dim(); ++i) {
    if (!std::isfinite(v[i])) {
      throw Error(ErrorCode::kNonFiniteComponent,
                  "component " + std::to_string(i) + " is not finite", -1, -1,
                  static_cast<int64_t>(i));
    }
  }
}

double Dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

double CosineWithNorms(std::span<const double> a, double norm_a,
                       std::span<const double> b, double norm_b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "cosine operands have dims " + std::to_string(a.size()) +
                    " and " + std::to_string(b.size()),
                static_cast<int64_t>(a.size()), static_cast<int64_t>(b.size()));
  }
  if (norm_a < kMinNorm || norm_b < kMinNorm) {
    throw Error(ErrorCode::kZeroNormVector, "cosine of a zero-norm vector");
  }
  const double c = Dot(a, b) / (norm_a * norm_b);
  return std::clamp(c, -1.0, 1.0);
}

double CosineSimilarity(const FeatureVector& a, const FeatureVector& b) {
  return CosineWithNorms(a.values(), a.Norm(), b.values(), b.Norm());
}

void RequirePositiveNorm(const FeatureVector& v) {
  if (v.Norm() < kMinNorm) {
    throw Error(ErrorCode::kZeroNormVector, "vector has zero norm");
  }
}

}  // namespace framecache
