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
// Deterministic synthetic feature streams.
//
// Random core: xorshift64* (shifts 12, 25, 27; multiplier
// 0x2545F4914F6CDD1D) seeded through one splitmix64 step (increment
// 0x9E3779B97F4A7C15, multipliers 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB).
// Floats are built from integers only:
//   uniform  = (next >> 11) * 2^-53                       in [0, 1)
//   gaussian = (sum of 12 uniforms) - 6                   (Irwin-Hall)
//   below(n) = ((next >> 32) * n) >> 32                   in [0, n)
// Beyond these only +, -, *, / and sqrt are used, all correctly rounded under
// IEEE-754, so the output is bit-identical across conforming platforms.
//
// Draw order per stream: appearance centroids, then pose centroids (each
// centroid is `dim` gaussians, normalized); then per record: cluster choice
// (clustered mode only), appearance noise, pose noise, clip score, musiq
// score. Record 0's scores are overwritten with 0.8 after drawing.
//

#ifndef FRAMECACHE_SYNTH_H_
#define FRAMECACHE_SYNTH_H_

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "framecache/stream.h"

namespace framecache {

class Xorshift64Star {
 public:
  explicit Xorshift64Star(uint64_t seed);

  uint64_t Next();
  double Uniform();
  double Gaussian();
  uint64_t Below(uint64_t n);  // n must be below 2^32

 private:
  uint64_t state_;
};

enum class SynthMode { kClustered, kOrthogonalBurst, kDrift };

std::string_view SynthModeName(SynthMode mode);
SynthMode ParseSynthMode(std::string_view name);  // accepts '-' or '_'

// Records per burst in orthogonal_burst mode.
inline constexpr size_t kBurstLength = 8;

struct SynthConfig {
  uint64_t seed = 42;
  SynthMode mode = SynthMode::kClustered;
  size_t n = 64;
  size_t d_a = 16;
  size_t d_p = 16;
  size_t clusters = 4;
  double noise = 0.05;
};

// clustered:        each record picks one of `clusters` random unit centroids
//                   uniformly, plus gaussian noise of scale `noise`.
// orthogonal_burst: centroids are the basis vectors e_0..e_{k-1}; records
//                   cycle through them in bursts of kBurstLength.
// drift:            the centroid moves linearly between two random unit
//                   vectors over the stream (renormalized), plus noise.
// Scores are uniform in [0.3, 0.9]; record 0 gets (0.8, 0.8).
//
// Throws kConfigError unless n >= 1, both dims >= 2, clusters >= 1 and
// noise is finite and non-negative.
FrameStream GenerateSynthetic(const SynthConfig& config);

}  // namespace framecache

#endif  // FRAMECACHE_SYNTH_H_
