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
// Data-parallel similarity kernels.
//
// Each kernel exists twice: a serial reference in `kernels::serial` and an
// OpenMP version in `kernels::omp`. Parallelism is only over independent
// outputs; every output element is reduced serially in index order, so both
// variants return bitwise identical results. The engine calls the OpenMP
// versions; the verification oracle and the tests use the serial ones.
//

#ifndef FRAMECACHE_KERNELS_H_
#define FRAMECACHE_KERNELS_H_

#include <cstddef>
#include <span>
#include <vector>

#include "framecache/features.h"

namespace framecache::kernels {

// Below this many output elements the OpenMP kernels run on one thread.
inline constexpr size_t kParallelThreshold = 64;

namespace serial {

// out[j] = cos(x, set[j]).
std::vector<double> SimilarityRow(std::span<const FeatureVector> set,
                                  const FeatureVector& x);

// Row-major n x n cosine matrix with an exact 1.0 diagonal.
std::vector<double> SimilarityMatrix(std::span<const FeatureVector> set);

// out[i] = (1/T) sum_t cos(refs[i], targets[t]).
std::vector<double> MeanAlignment(std::span<const FeatureVector> refs,
                                  std::span<const FeatureVector> targets);

}  // namespace serial

namespace omp {

std::vector<double> SimilarityRow(std::span<const FeatureVector> set,
                                  const FeatureVector& x);
std::vector<double> SimilarityMatrix(std::span<const FeatureVector> set);
std::vector<double> MeanAlignment(std::span<const FeatureVector> refs,
                                  std::span<const FeatureVector> targets);

}  // namespace omp

int MaxThreads();

}  // namespace framecache::kernels

#endif  // FRAMECACHE_KERNELS_H_
