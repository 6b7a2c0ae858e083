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

// Shared helpers for the test binaries: random instance generators and
// reference computations that do not go through the engine.

#ifndef FRAMECACHE_TESTS_TEST_UTIL_H_
#define FRAMECACHE_TESTS_TEST_UTIL_H_

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "framecache/cache.h"
#include "framecache/features.h"
#include "framecache/stream.h"

namespace framecache::testing {

inline std::string DataPath(const std::string& name) {
  return std::string(FRAMECACHE_TEST_DATA_DIR) + "/" + name;
}

// Independent cosine in extended precision, no clamping.
inline double RefCosine(const std::vector<double>& a,
                        const std::vector<double>& b) {
  long double dot = 0, na = 0, nb = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    dot += static_cast<long double>(a[i]) * b[i];
    na += static_cast<long double>(a[i]) * a[i];
    nb += static_cast<long double>(b[i]) * b[i];
  }
  return static_cast<double>(dot / (std::sqrt(na) * std::sqrt(nb)));
}

inline std::vector<double> Values(const FeatureVector& v) {
  return {v.values().begin(), v.values().end()};
}

inline double RefSigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

class Gen {
 public:
  explicit Gen(uint64_t seed) : rng_(seed) {}

  size_t Int(size_t lo, size_t hi) {  // inclusive
    return std::uniform_int_distribution<size_t>(lo, hi)(rng_);
  }
  double Real(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }

  // Standard-normal components, re-drawn if (improbably) near zero.
  FeatureVector Normal(size_t dim) {
    std::normal_distribution<double> n(0.0, 1.0);
    for (;;) {
      std::vector<double> v(dim);
      for (double& x : v) x = n(rng_);
      FeatureVector f(std::move(v));
      if (f.Norm() > 1e-6) return f;
    }
  }

  CacheEntry Entry(size_t d_a, size_t d_p, int64_t at) {
    return CacheEntry{"e" + std::to_string(at), Normal(d_a), Normal(d_p),
                      Real(0.0, 1.0), at};
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

// A randomized cache workload: capacity, dims, threshold and up to 256
// candidates, a share of which are near-copies of earlier vectors so both the
// replace and the reject branches are exercised.
struct SequenceCase {
  CachePolicyConfig config;
  size_t d_a = 0;
  size_t d_p = 0;
  CacheEntry initial;
  std::vector<CacheEntry> candidates;
};

inline SequenceCase RandomSequence(uint64_t seed) {
  Gen gen(seed);
  SequenceCase c;
  c.config.capacity = gen.Int(2, 16);
  c.config.redundancy_threshold = gen.Int(0, 1) ? 1.0 : gen.Real(-1.0, 4.0);
  c.d_a = gen.Int(2, 32);
  c.d_p = gen.Int(2, 8);
  c.initial = gen.Entry(c.d_a, c.d_p, 0);
  const size_t n = gen.Int(1, 256);
  std::vector<std::vector<double>> seen = {Values(c.initial.appearance)};
  for (size_t i = 1; i <= n; ++i) {
    CacheEntry e = gen.Entry(c.d_a, c.d_p, static_cast<int64_t>(i));
    if (gen.Int(0, 9) < 3) {
      std::vector<double> v = seen[gen.Int(0, seen.size() - 1)];
      for (double& x : v) x += gen.Real(-0.05, 0.05);
      e.appearance = FeatureVector(std::move(v));
    }
    seen.push_back(Values(e.appearance));
    c.candidates.push_back(std::move(e));
  }
  return c;
}

inline CacheEntry MakeEntry(const std::string& id, FeatureVector appearance,
                            FeatureVector pose = {1.0, 0.0}, int64_t at = 0) {
  return CacheEntry{id, std::move(appearance), std::move(pose), 0.5, at};
}

}  // namespace framecache::testing

#endif  // FRAMECACHE_TESTS_TEST_UTIL_H_
