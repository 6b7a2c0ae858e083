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

#include "framecache/screen.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "framecache/error.h"

namespace framecache {
namespace {

bool InUnitInterval(double x) { return std::isfinite(x) && x >= 0.0 && x <= 1.0; }

double Saturate(double v) { return v / (v + kProxySaturation); }

}  // namespace

void ValidateScores(const QualityScores& scores) {
  if (!InUnitInterval(scores.clip) || !InUnitInterval(scores.musiq)) {
    throw Error(ErrorCode::kInvalidScores,
                "quality scores must lie in [0, 1], got clip=" +
                    std::to_string(scores.clip) +
                    " musiq=" + std::to_string(scores.musiq));
  }
}

void ValidateScreenConfig(const ScreenConfig& config) {
  if (!InUnitInterval(config.lambda)) {
    throw Error(ErrorCode::kConfigError, "lambda must lie in [0, 1]");
  }
  if (!(std::isfinite(config.alpha) && config.alpha > 0.0 &&
        config.alpha <= 1.0)) {
    throw Error(ErrorCode::kConfigError, "alpha must lie in (0, 1]");
  }
}

double CombinedScore(const QualityScores& scores, const ScreenConfig& config) {
  ValidateScores(scores);
  return config.lambda * scores.clip + (1.0 - config.lambda) * scores.musiq;
}

double AcceptanceThreshold(double s0, double alpha) {
  if (!(s0 >= 0.0)) {
    throw Error(ErrorCode::kNegativeScore,
                "initial score must be non-negative, got " + std::to_string(s0));
  }
  const double sigmoid = 1.0 / (1.0 + std::exp(-2.0 * s0));
  return s0 * std::max(alpha, sigmoid);
}

ScreenState InitScreenState(const QualityScores& initial,
                            const ScreenConfig& config) {
  ValidateScreenConfig(config);
  ScreenState state;
  state.s0 = CombinedScore(initial, config);
  state.tau = AcceptanceThreshold(state.s0, config.alpha);
  return state;
}

ScreenDecision ScreenFrame(const QualityScores& scores,
                           const ScreenState& state,
                           const ScreenConfig& config) {
  ScreenDecision decision;
  decision.score = CombinedScore(scores, config);
  decision.admission =
      decision.score > state.tau ? Admission::kAdmitted : Admission::kFiltered;
  return decision;
}

QualityScores ProxyScores(std::span<const double> pixels, size_t width,
                          size_t height) {
  if (width * height < 4 || pixels.size() != width * height) {
    throw Error(ErrorCode::kEmptyRaster,
                "raster must have at least 4 pixels and match w*h (w=" +
                    std::to_string(width) + ", h=" + std::to_string(height) +
                    ", len=" + std::to_string(pixels.size()) + ")");
  }
  for (double p : pixels) {
    if (!InUnitInterval(p)) {
      throw Error(ErrorCode::kInvalidScores,
                  "raster intensities must lie in [0, 1]");
    }
  }
  const double n = static_cast<double>(pixels.size());

  double mean = 0.0;
  for (double p : pixels) mean += p;
  mean /= n;
  double variance = 0.0;
  for (double p : pixels) variance += (p - mean) * (p - mean);
  variance /= n;

  double gradient = 0.0;
  for (size_t y = 0; y < height; ++y) {
    for (size_t x = 0; x < width; ++x) {
      const double here = pixels[y * width + x];
      const double gx = (x + 1 < width ? pixels[y * width + x + 1] : here) - here;
      const double gy =
          (y + 1 < height ? pixels[(y + 1) * width + x] : here) - here;
      gradient += std::sqrt(gx * gx + gy * gy);
    }
  }
  gradient /= n;

  return QualityScores{Saturate(variance), Saturate(gradient)};
}

}  // namespace framecache
