// Copyright 2026 The Treeconv Authors
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

#ifndef TREECONV_RANDOM_H_
#define TREECONV_RANDOM_H_

// Portable randomness. std::mt19937_64's output sequence is fixed by the
// standard; the standard distributions are not, so bounded draws are done
// here.

#include <cstddef>
#include <cstdint>
#include <random>

namespace treeconv {

using Rng = std::mt19937_64;

// Unbiased draw from [0, bound). `bound` must be positive.
inline std::uint64_t UniformBelow(Rng& rng, std::uint64_t bound) {
  // Reject the low residue class so every value is equally likely.
  const std::uint64_t threshold = (0 - bound) % bound;
  while (true) {
    const std::uint64_t x = rng();
    if (x >= threshold) return x % bound;
  }
}

// Seed of the generator used for bootstrap resample `resample`.
inline std::uint64_t ResampleSeed(std::uint64_t seed, std::size_t resample) {
  return seed ^ (0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(resample) + 1));
}

}  // namespace treeconv

#endif  // TREECONV_RANDOM_H_
