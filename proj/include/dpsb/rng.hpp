// Copyright 2026 The dpsb Authors.
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

#ifndef DPSB_RNG_HPP_
#define DPSB_RNG_HPP_

#include <cstdint>
#include <random>
#include <string_view>

namespace dpsb {

using RngEngine = std::mt19937_64;

// SplitMix64 finalizer. Bijective on 64-bit words and well mixed, so
// consecutive (seed, index) pairs map to decorrelated engine seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// FNV-1a hash of a suite name; stable across platforms, so the same
// (seed, suite, chunk) triple always names the same stream.
constexpr std::uint64_t salt_of(std::string_view name) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char ch : name) {
    h ^= static_cast<unsigned char>(ch);
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Stream for (seed, salt, index). Workers that own distinct indices get
// independent streams regardless of how chunks are scheduled.
inline RngEngine make_stream(std::uint64_t seed, std::uint64_t salt,
                             std::uint64_t index) {
  return RngEngine(mix64(mix64(seed ^ salt) ^ index));
}

// Uniform draw strictly inside (0,1), 53-bit resolution. Exact zeros are
// redrawn so downstream logs and ratios stay finite.
inline double uniform01(RngEngine& rng) {
  for (;;) {
    const double u =
        static_cast<double>(rng() >> 11) * 0x1.0p-53;  // in [0,1)
    if (u > 0.0) return u;
  }
}

}  // namespace dpsb

#endif  // DPSB_RNG_HPP_
