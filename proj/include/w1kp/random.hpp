// Copyright 2026 The W1KP Kit Authors
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

// Seeded randomness used by every sampling routine in the kit.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. Standard distributions are implementation-defined, so bounded
// integers are drawn with the rejection scheme below instead; together these
// make every seeded result identical across compilers and platforms.

#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace w1kp {

using Engine = std::mt19937_64;

/// SplitMix64 finalizer; decorrelates nearby seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Engine for sub-stream `stream` of `seed`, e.g. one chunk of a Monte-Carlo
/// run.
inline Engine make_engine(std::uint64_t seed, std::uint64_t stream = 0) {
  return Engine(mix_seed(mix_seed(seed) ^ mix_seed(stream + 0x632BE59BD9B4E019ull)));
}

/// Uniform integer in [0, bound), bound > 0. Unbiased (rejects the partial
/// top block of the 64-bit range).
inline std::uint64_t uniform_below(Engine& engine, std::uint64_t bound) {
  const std::uint64_t limit = (~std::uint64_t{0}) - ((~std::uint64_t{0}) % bound + 1) % bound;
  std::uint64_t x = engine();
  while (x > limit) x = engine();
  return x % bound;
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(Engine& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

/// Deterministic Fisher-Yates shuffle.
template <typename T>
void shuffle(std::vector<T>& items, Engine& engine) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_below(engine, i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace w1kp
