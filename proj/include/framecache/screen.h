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
// Quality screening: a frame enters the cache only if its weighted
// no-reference quality score strictly exceeds a threshold derived from the
// initial reference frame's own score.
//

#ifndef FRAMECACHE_SCREEN_H_
#define FRAMECACHE_SCREEN_H_

#include <cstddef>
#include <span>

namespace framecache {

// Both components normalized to [0, 1]: CLIP-IQA natively, MUSIQ divided by
// 100.
struct QualityScores {
  double clip = 0.0;
  double musiq = 0.0;

  friend bool operator==(const QualityScores&, const QualityScores&) = default;
};

struct ScreenConfig {
  double lambda = 0.6;  // weight of the CLIP-IQA term
  double alpha = 0.95;  // strictness floor of the threshold multiplier
};

// Threshold state fixed at initialization from the initial frame.
struct ScreenState {
  double s0 = 0.0;
  double tau = 0.0;
};

enum class Admission { kAdmitted, kFiltered };

struct ScreenDecision {
  Admission admission = Admission::kFiltered;
  double score = 0.0;

  bool admitted() const { return admission == Admission::kAdmitted; }
};

// Throws kInvalidScores if a component is outside [0, 1] or not finite.
void ValidateScores(const QualityScores& scores);

// Throws kConfigError unless lambda in [0, 1] and alpha in (0, 1].
void ValidateScreenConfig(const ScreenConfig& config);

// lambda * clip + (1 - lambda) * musiq.
double CombinedScore(const QualityScores& scores, const ScreenConfig& config);

// s0 * max(alpha, sigmoid(2 * s0)). Throws kNegativeScore if s0 < 0.
double AcceptanceThreshold(double s0, double alpha);

ScreenState InitScreenState(const QualityScores& initial,
                            const ScreenConfig& config);

// Admitted iff the combined score is strictly greater than state.tau.
ScreenDecision ScreenFrame(const QualityScores& scores,
                           const ScreenState& state,
                           const ScreenConfig& config);

// Stand-in scorer for records that carry a raw grayscale raster (row-major,
// intensities in [0, 1]) instead of precomputed scores.
//
//   clip  = v / (v + k)  with v the population variance of the intensities
//   musiq = m / (m + k)  with m the mean forward-difference gradient
//                        magnitude (edge pixels replicate, so the last
//                        column/row contribute a zero difference on that axis)
//
// with k = kProxySaturation. Throws kEmptyRaster if width * height < 4 or the
// data length differs from width * height, kInvalidScores if an intensity is
// outside [0, 1].
inline constexpr double kProxySaturation = 0.01;
QualityScores ProxyScores(std::span<const double> pixels, size_t width,
                          size_t height);

}  // namespace framecache

#endif  // FRAMECACHE_SCREEN_H_
