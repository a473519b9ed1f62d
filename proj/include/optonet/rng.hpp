// Copyright 2026 The Optonet Authors
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

#pragma once

#include <cstdint>
#include <random>

namespace optonet {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed-splitting rule for replicates and per-device streams:
// child = mix64(base XOR index).
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept {
  return mix64(base ^ index);
}

// Streams for distinct purposes (rasters, banks, noise) must not alias.
enum class StreamTag : std::uint64_t {
  kRaster = 0x5241535445520000ULL,
  kBank = 0x42414e4b00000000ULL,
  kNoise = 0x4e4f495345000000ULL,
};

inline std::mt19937_64 make_engine(std::uint64_t seed, StreamTag tag, std::uint64_t index = 0) {
  return std::mt19937_64(derive_seed(seed ^ static_cast<std::uint64_t>(tag), index));
}

}  // namespace optonet
