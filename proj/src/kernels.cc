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

#include "framecache/kernels.h"

#include <algorithm>
#include <cstdint>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "framecache/error.h"

namespace framecache::kernels {
namespace {

// All argument checking happens here, before any parallel region: exceptions
// must not escape an OpenMP loop body.
std::vector<double> CheckedNorms(std::span<const FeatureVector> set,
                                 size_t dim) {
  std::vector<double> norms(set.size());
  for (size_t i = 0; i < set.size(); ++i) {
    if (set[i].dim() != dim) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "vector " + std::to_string(i) + " has dim " +
                      std::to_string(set[i].dim()),
                  static_cast<int64_t>(dim),
                  static_cast<int64_t>(set[i].dim()));
    }
    norms[i] = set[i].Norm();
    if (norms[i] < kMinNorm) {
      throw Error(ErrorCode::kZeroNormVector,
                  "vector " + std::to_string(i) + " has zero norm", -1, -1,
                  static_cast<int64_t>(i));
    }
  }
  return norms;
}

inline double Cos(const FeatureVector& a, double na, const FeatureVector& b,
                  double nb) {
  return std::clamp(Dot(a.values(), b.values()) / (na * nb), -1.0, 1.0);
}

inline double MatrixCell(std::span<const FeatureVector> set,
                         const std::vector<double>& norms, size_t i, size_t j) {
  return i == j ? 1.0 : Cos(set[i], norms[i], set[j], norms[j]);
}

inline double AlignmentFor(const FeatureVector& ref, double ref_norm,
                           std::span<const FeatureVector> targets,
                           const std::vector<double>& target_norms) {
  double sum = 0.0;
  for (size_t t = 0; t < targets.size(); ++t) {
    sum += Cos(ref, ref_norm, targets[t], target_norms[t]);
  }
  return sum / static_cast<double>(targets.size());
}

void RequireTargets(std::span<const FeatureVector> targets) {
  if (targets.empty()) {
    throw Error(ErrorCode::kEmptySequence, "empty target sequence");
  }
}

}  // namespace

namespace serial {

std::vector<double> SimilarityRow(std::span<const FeatureVector> set,
                                  const FeatureVector& x) {
  const FeatureVector xs[] = {x};
  const double nx = CheckedNorms(xs, x.dim())[0];
  const std::vector<double> norms = CheckedNorms(set, x.dim());
  std::vector<double> out(set.size());
  for (size_t j = 0; j < set.size(); ++j) out[j] = Cos(x, nx, set[j], norms[j]);
  return out;
}

std::vector<double> SimilarityMatrix(std::span<const FeatureVector> set) {
  const size_t n = set.size();
  if (n == 0) return {};
  const std::vector<double> norms = CheckedNorms(set, set[0].dim());
  std::vector<double> out(n * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) out[i * n + j] = MatrixCell(set, norms, i, j);
  }
  return out;
}

std::vector<double> MeanAlignment(std::span<const FeatureVector> refs,
                                  std::span<const FeatureVector> targets) {
  RequireTargets(targets);
  const size_t dim = targets[0].dim();
  const std::vector<double> ref_norms = CheckedNorms(refs, dim);
  const std::vector<double> target_norms = CheckedNorms(targets, dim);
  std::vector<double> out(refs.size());
  for (size_t i = 0; i < refs.size(); ++i) {
    out[i] = AlignmentFor(refs[i], ref_norms[i], targets, target_norms);
  }
  return out;
}

}  // namespace serial

namespace omp {

std::vector<double> SimilarityRow(std::span<const FeatureVector> set,
                                  const FeatureVector& x) {
  const FeatureVector xs[] = {x};
  const double nx = CheckedNorms(xs, x.dim())[0];
  const std::vector<double> norms = CheckedNorms(set, x.dim());
  const int64_t n = static_cast<int64_t>(set.size());
  std::vector<double> out(set.size());
#pragma omp parallel for schedule(static) if (set.size() >= kParallelThreshold)
  for (int64_t j = 0; j < n; ++j) out[j] = Cos(x, nx, set[j], norms[j]);
  return out;
}

std::vector<double> SimilarityMatrix(std::span<const FeatureVector> set) {
  const size_t n = set.size();
  if (n == 0) return {};
  const std::vector<double> norms = CheckedNorms(set, set[0].dim());
  std::vector<double> out(n * n);
  const int64_t rows = static_cast<int64_t>(n);
#pragma omp parallel for schedule(static) if (n * n >= kParallelThreshold)
  for (int64_t i = 0; i < rows; ++i) {
    for (size_t j = 0; j < n; ++j) {
      out[i * n + j] = MatrixCell(set, norms, static_cast<size_t>(i), j);
    }
  }
  return out;
}

std::vector<double> MeanAlignment(std::span<const FeatureVector> refs,
                                  std::span<const FeatureVector> targets) {
  RequireTargets(targets);
  const size_t dim = targets[0].dim();
  const std::vector<double> ref_norms = CheckedNorms(refs, dim);
  const std::vector<double> target_norms = CheckedNorms(targets, dim);
  const int64_t n = static_cast<int64_t>(refs.size());
  std::vector<double> out(refs.size());
#pragma omp parallel for schedule(static) \
    if (refs.size() * targets.size() >= kParallelThreshold)
  for (int64_t i = 0; i < n; ++i) {
    out[i] = AlignmentFor(refs[i], ref_norms[i], targets, target_norms);
  }
  return out;
}

}  // namespace omp

int MaxThreads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace framecache::kernels
