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

#ifndef TREECONV_KERNELS_H_
#define TREECONV_KERNELS_H_

// Data-parallel inner loops. Every OpenMP kernel has a *Serial twin that
// computes the same result in one thread; tests assert they agree exactly
// and bench/ compares their speed.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "treeconv/conllu.h"
#include "treeconv/pair_index.h"

namespace treeconv::kernels {

// (head form, dependent form) -> relation counts over all non-root arcs.
PairIndex::Entries CountArcs(const Corpus& corpus, const NormalizationPolicy& policy);
PairIndex::Entries CountArcsSerial(const Corpus& corpus,
                                   const NormalizationPolicy& policy);

struct ScoredRow {
  std::size_t row = 0;
  double similarity = 0.0;

  friend bool operator==(const ScoredRow&, const ScoredRow&) = default;
};

// Total order used for neighbor lists: higher similarity first, then lower
// row (vocabulary-file order).
inline bool Ranks(const ScoredRow& a, const ScoredRow& b) {
  if (a.similarity != b.similarity) return a.similarity > b.similarity;
  return a.row < b.row;
}

// Cosine similarity of row `query` against every other row of the row-major
// `matrix` (rows of `dim` floats), best `k` by Ranks. Rows with zero norm
// score 0. `norms[i]` is the Euclidean norm of row i and norms[query] > 0.
std::vector<ScoredRow> TopKScan(std::span<const float> matrix, std::size_t dim,
                                std::span<const double> norms, std::size_t query,
                                std::size_t k);
std::vector<ScoredRow> TopKScanSerial(std::span<const float> matrix, std::size_t dim,
                                      std::span<const double> norms,
                                      std::size_t query, std::size_t k);

double Dot(std::span<const float> a, std::span<const float> b);

struct SentenceTally {
  std::int64_t heads = 0;    // correct heads
  std::int64_t labeled = 0;  // correct head and label
  std::int64_t tokens = 0;

  friend bool operator==(const SentenceTally&, const SentenceTally&) = default;
};

// Per-sentence attachment tallies of already-aligned corpora. Tokens whose
// gold relation is "punct" are skipped when `exclude_punct` is set.
std::vector<SentenceTally> TallySentences(const Corpus& gold, const Corpus& predicted,
                                          bool exclude_punct);
std::vector<SentenceTally> TallySentencesSerial(const Corpus& gold,
                                                const Corpus& predicted,
                                                bool exclude_punct);

// Paired bootstrap over sentences. Resample b draws n sentence indices with
// replacement from an Rng seeded by ResampleSeed(seed, b) and records
// 100 * (sum(correct_a) - sum(correct_b)) / sum(tokens) over the draw.
std::vector<double> BootstrapDeltas(std::span<const std::int64_t> correct_a,
                                    std::span<const std::int64_t> correct_b,
                                    std::span<const std::int64_t> tokens,
                                    std::size_t resamples, std::uint64_t seed);
std::vector<double> BootstrapDeltasSerial(std::span<const std::int64_t> correct_a,
                                          std::span<const std::int64_t> correct_b,
                                          std::span<const std::int64_t> tokens,
                                          std::size_t resamples, std::uint64_t seed);

}  // namespace treeconv::kernels

#endif  // TREECONV_KERNELS_H_
