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

#include "treeconv/sampler.h"

#include <algorithm>
#include <cstdio>
#include <numeric>

#include "json.hpp"
#include "treeconv/errors.h"
#include "treeconv/random.h"

namespace treeconv {

std::vector<std::size_t> ChooseIndices(std::size_t population, std::size_t count,
                                       std::mt19937_64& rng) {
  std::vector<std::size_t> pool(population);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(UniformBelow(rng, population - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  std::sort(pool.begin(), pool.end());
  return pool;
}

SampleResult Sample(const SamplePlan& plan) {
  if (plan.base_train == nullptr || plan.augment_train == nullptr) {
    throw Error("sample plan is missing a corpus");
  }
  if (plan.total_sentences == 0 || plan.total_sentences % 2 != 0) {
    throw Error("sample size must be a positive even number, got " +
                std::to_string(plan.total_sentences));
  }
  const std::size_t half = plan.total_sentences / 2;
  if (plan.base_train->size() < half) {
    throw InsufficientData("base corpus has " + std::to_string(plan.base_train->size()) +
                           " sentences, need " + std::to_string(half));
  }
  if (plan.augment_train->size() < half) {
    throw InsufficientData("augment corpus has " +
                           std::to_string(plan.augment_train->size()) +
                           " sentences, need " + std::to_string(half));
  }

  Rng rng(plan.seed);
  SampleResult result;
  result.manifest.seed = plan.seed;
  result.manifest.total = plan.total_sentences;
  result.manifest.base_indices = ChooseIndices(plan.base_train->size(), half, rng);
  result.manifest.augment_indices = ChooseIndices(plan.augment_train->size(), half, rng);

  result.corpus.sentences.reserve(plan.total_sentences);
  for (std::size_t i : result.manifest.base_indices) {
    result.corpus.sentences.push_back(plan.base_train->sentences[i]);
  }
  for (std::size_t i : result.manifest.augment_indices) {
    result.corpus.sentences.push_back(plan.augment_train->sentences[i]);
  }
  result.manifest.checksum = Fnv1a64Hex(SerializeCorpus(result.corpus));
  return result;
}

std::string Fnv1a64Hex(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (char c : bytes) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 0x100000001b3ULL;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(hash));
  return buffer;
}

std::string ManifestToJson(const SampleManifest& manifest) {
  nlohmann::ordered_json doc;
  doc["seed"] = manifest.seed;
  doc["total"] = manifest.total;
  doc["prng"] = "mt19937_64";
  doc["checksum_fnv1a64"] = manifest.checksum;
  doc["base_indices"] = manifest.base_indices;
  doc["augment_indices"] = manifest.augment_indices;
  return doc.dump(2) + "\n";
}

std::string SampleStem(std::size_t tier, std::uint64_t seed) {
  return "train_t" + std::to_string(tier) + "_s" + std::to_string(seed);
}

}  // namespace treeconv
