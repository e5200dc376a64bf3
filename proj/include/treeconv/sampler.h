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

#ifndef TREECONV_SAMPLER_H_
#define TREECONV_SAMPLER_H_

// Half-and-half training sets: total/2 sentences from the base training
// partition followed by total/2 from the augment partition, drawn without
// replacement from a seeded std::mt19937_64.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "treeconv/conllu.h"

namespace treeconv {

inline const std::vector<std::size_t> kDefaultTiers = {250, 500, 1000, 2000, 4000};
inline const std::vector<std::uint64_t> kDefaultSeeds = {1, 2, 3};

struct SamplePlan {
  std::size_t total_sentences = 0;  // positive and even
  const Corpus* base_train = nullptr;
  const Corpus* augment_train = nullptr;
  std::uint64_t seed = 1;
};

struct SampleManifest {
  std::uint64_t seed = 0;
  std::size_t total = 0;
  std::vector<std::size_t> base_indices;     // ascending
  std::vector<std::size_t> augment_indices;  // ascending
  std::string checksum;                      // FNV-1a 64 of the emitted bytes, hex

  friend bool operator==(const SampleManifest&, const SampleManifest&) = default;
};

struct SampleResult {
  Corpus corpus;
  SampleManifest manifest;
};

// `count` distinct indices from [0, population), ascending. Partial
// Fisher-Yates driven by `rng`.
std::vector<std::size_t> ChooseIndices(std::size_t population, std::size_t count,
                                       std::mt19937_64& rng);

// Throws Error for odd or zero totals and InsufficientData when a side has
// fewer than total/2 sentences.
SampleResult Sample(const SamplePlan& plan);

std::string Fnv1a64Hex(std::string_view bytes);
std::string ManifestToJson(const SampleManifest& manifest);

// "train_t{tier}_s{seed}"
std::string SampleStem(std::size_t tier, std::uint64_t seed);

}  // namespace treeconv

#endif  // TREECONV_SAMPLER_H_
