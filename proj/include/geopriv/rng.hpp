//
// Copyright 2026 The geopriv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#pragma once

#include <cstdint>

namespace geopriv {

// Counter-based randomness: every draw is a pure function of
// (seed, stream, counter), so sampling is reproducible bit-for-bit and
// independent of evaluation order or scheduling.

// splitmix64 finalizer.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) {
  return mix64(a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2)));
}

// Uniform draw in [0, 1) keyed by (seed, stream, counter).
inline double uniform01(std::uint64_t seed, std::uint64_t stream,
                        std::uint64_t counter) {
  const std::uint64_t h = mix64(hash_combine(hash_combine(seed, stream), counter));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

// FNV-1a, used to key per-user draws by identity rather than position.
inline std::uint64_t fnv1a64(const char* data, std::size_t len) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= static_cast<unsigned char>(data[i]);
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Stream tags keep independent uses of the same master seed decorrelated.
namespace rng_stream {
inline constexpr std::uint64_t kSynthesis = 0x53594e5448ULL;
inline constexpr std::uint64_t kObfuscation = 0x4f424655ULL;
inline constexpr std::uint64_t kSubsample = 0x53554253ULL;
inline constexpr std::uint64_t kTrial = 0x545249414cULL;
}  // namespace rng_stream

}  // namespace geopriv
