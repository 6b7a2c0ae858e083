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

#include "framecache/synth.h"

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "framecache/error.h"

namespace framecache {
namespace {

uint64_t SplitMix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

using Vec = std::vector<double>;

double NormOf(const Vec& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

Vec Normalized(Vec v) {
  const double n = NormOf(v);
  for (double& x : v) x /= n;
  return v;
}

Vec RandomUnit(Xorshift64Star& rng, size_t dim) {
  // A gaussian vector is zero with probability 0; retry anyway so the
  // function is total.
  for (;;) {
    Vec v(dim);
    for (double& x : v) x = rng.Gaussian();
    if (NormOf(v) > 1e-6) return Normalized(std::move(v));
  }
}

Vec BasisVector(size_t dim, size_t axis) {
  Vec v(dim, 0.0);
  v[axis % dim] = 1.0;
  return v;
}

Vec Lerp(const Vec& a, const Vec& b, double t) {
  Vec v(a.size());
  for (size_t i = 0; i < a.size(); ++i) v[i] = (1.0 - t) * a[i] + t * b[i];
  return NormOf(v) > 1e-6 ? Normalized(std::move(v)) : a;
}

FeatureVector Perturbed(const Vec& centroid, double noise, Xorshift64Star& rng) {
  Vec v = centroid;
  for (double& x : v) x += noise * rng.Gaussian();
  if (NormOf(v) < kMinNorm) v = centroid;
  return FeatureVector(std::move(v));
}

struct Centroids {
  std::vector<Vec> appearance;
  std::vector<Vec> pose;
};

Centroids MakeCentroids(const SynthConfig& c, Xorshift64Star& rng) {
  Centroids out;
  switch (c.mode) {
    case SynthMode::kClustered:
      for (size_t k = 0; k < c.clusters; ++k) out.appearance.push_back(RandomUnit(rng, c.d_a));
      for (size_t k = 0; k < c.clusters; ++k) out.pose.push_back(RandomUnit(rng, c.d_p));
      break;
    case SynthMode::kOrthogonalBurst:
      for (size_t k = 0; k < c.clusters; ++k) {
        out.appearance.push_back(BasisVector(c.d_a, k));
        out.pose.push_back(BasisVector(c.d_p, k));
      }
      break;
    case SynthMode::kDrift:
      // Start and end of the drift path.
      for (int k = 0; k < 2; ++k) out.appearance.push_back(RandomUnit(rng, c.d_a));
      for (int k = 0; k < 2; ++k) out.pose.push_back(RandomUnit(rng, c.d_p));
      break;
  }
  return out;
}

}  // namespace

Xorshift64Star::Xorshift64Star(uint64_t seed) : state_(SplitMix64(seed)) {
  if (state_ == 0) state_ = 0x9E3779B97F4A7C15ULL;
}

uint64_t Xorshift64Star::Next() {
  state_ ^= state_ >> 12;
  state_ ^= state_ << 25;
  state_ ^= state_ >> 27;
  return state_ * 0x2545F4914F6CDD1DULL;
}

double Xorshift64Star::Uniform() {
  return static_cast<double>(Next() >> 11) * 0x1.0p-53;
}

double Xorshift64Star::Gaussian() {
  double sum = 0.0;
  for (int i = 0; i < 12; ++i) sum += Uniform();
  return sum - 6.0;
}

uint64_t Xorshift64Star::Below(uint64_t n) { return ((Next() >> 32) * n) >> 32; }

std::string_view SynthModeName(SynthMode mode) {
  switch (mode) {
    case SynthMode::kClustered: return "clustered";
    case SynthMode::kOrthogonalBurst: return "orthogonal_burst";
    case SynthMode::kDrift: return "drift";
  }
  return "unknown";
}

SynthMode ParseSynthMode(std::string_view name) {
  std::string normalized(name);
  for (char& ch : normalized) {
    if (ch == '-') ch = '_';
  }
  for (SynthMode m :
       {SynthMode::kClustered, SynthMode::kOrthogonalBurst, SynthMode::kDrift}) {
    if (SynthModeName(m) == normalized) return m;
  }
  throw Error(ErrorCode::kConfigError, "unknown synth mode '" + std::string(name) + "'");
}

FrameStream GenerateSynthetic(const SynthConfig& c) {
  if (c.n < 1 || c.d_a < 2 || c.d_p < 2 || c.clusters < 1 ||
      !std::isfinite(c.noise) || c.noise < 0.0) {
    throw Error(ErrorCode::kConfigError,
                "synth needs n >= 1, dims >= 2, clusters >= 1, noise >= 0");
  }
  if (c.clusters >= (uint64_t{1} << 32)) {
    throw Error(ErrorCode::kConfigError, "too many clusters");
  }
  Xorshift64Star rng(c.seed);
  const Centroids centroids = MakeCentroids(c, rng);

  FrameStream stream;
  stream.d_a = c.d_a;
  stream.d_p = c.d_p;
  stream.records.reserve(c.n);
  for (size_t i = 0; i < c.n; ++i) {
    Vec appearance_center;
    Vec pose_center;
    switch (c.mode) {
      case SynthMode::kClustered: {
        const size_t k = rng.Below(c.clusters);
        appearance_center = centroids.appearance[k];
        pose_center = centroids.pose[k];
        break;
      }
      case SynthMode::kOrthogonalBurst: {
        const size_t k = (i / kBurstLength) % c.clusters;
        appearance_center = centroids.appearance[k];
        pose_center = centroids.pose[k];
        break;
      }
      case SynthMode::kDrift: {
        const double t =
            c.n > 1 ? static_cast<double>(i) / static_cast<double>(c.n - 1) : 0.0;
        appearance_center = Lerp(centroids.appearance[0], centroids.appearance[1], t);
        pose_center = Lerp(centroids.pose[0], centroids.pose[1], t);
        break;
      }
    }
    FrameRecord rec;
    rec.index = static_cast<int64_t>(i);
    char id[32];
    std::snprintf(id, sizeof(id), "f%05zu", i);
    rec.frame_id = id;
    rec.appearance = Perturbed(appearance_center, c.noise, rng);
    rec.pose = Perturbed(pose_center, c.noise, rng);
    QualityScores scores;
    scores.clip = 0.3 + 0.6 * rng.Uniform();
    scores.musiq = 0.3 + 0.6 * rng.Uniform();
    if (i == 0) scores = QualityScores{0.8, 0.8};
    rec.scores = scores;
    stream.records.push_back(std::move(rec));
  }
  return stream;
}

}  // namespace framecache
