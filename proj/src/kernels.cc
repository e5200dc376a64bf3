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

#include "treeconv/kernels.h"

#include <algorithm>
#include <queue>

#include <omp.h>

#include "treeconv/random.h"

namespace treeconv::kernels {
namespace {

void CountSentence(const Sentence& sentence, const NormalizationPolicy& policy,
                   PairIndex::Entries* entries) {
  for (const Token& token : sentence.tokens) {
    if (token.head <= 0) continue;
    PairKey key{policy.Apply(sentence.HeadForm(token)), policy.Apply(token.form)};
    ++(*entries)[std::move(key)][token.deprel];
  }
}

void MergeInto(PairIndex::Entries&& from, PairIndex::Entries* into) {
  for (auto& [key, counts] : from) {
    RelationCounts& target = (*into)[key];
    for (const auto& [relation, count] : counts) target[relation] += count;
  }
}

double Cosine(std::span<const float> matrix, std::size_t dim,
              std::span<const double> norms, std::size_t query, std::size_t row) {
  if (norms[row] == 0.0) return 0.0;
  const double dot = Dot(matrix.subspan(query * dim, dim), matrix.subspan(row * dim, dim));
  return dot / (norms[query] * norms[row]);
}

struct WorseFirst {
  bool operator()(const ScoredRow& a, const ScoredRow& b) const { return Ranks(a, b); }
};

SentenceTally TallyOne(const Sentence& gold, const Sentence& predicted,
                       bool exclude_punct) {
  SentenceTally tally;
  for (std::size_t i = 0; i < gold.tokens.size(); ++i) {
    const Token& g = gold.tokens[i];
    const Token& p = predicted.tokens[i];
    if (exclude_punct && g.deprel == "punct") continue;
    ++tally.tokens;
    if (g.head == p.head) {
      ++tally.heads;
      if (g.deprel == p.deprel) ++tally.labeled;
    }
  }
  return tally;
}

double ResampleDelta(std::span<const std::int64_t> correct_a,
                     std::span<const std::int64_t> correct_b,
                     std::span<const std::int64_t> tokens, std::uint64_t seed) {
  const std::size_t n = tokens.size();
  Rng rng(seed);
  std::int64_t diff = 0;
  std::int64_t total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = UniformBelow(rng, n);
    diff += correct_a[j] - correct_b[j];
    total += tokens[j];
  }
  return total == 0 ? 0.0 : 100.0 * static_cast<double>(diff) / static_cast<double>(total);
}

}  // namespace

PairIndex::Entries CountArcs(const Corpus& corpus, const NormalizationPolicy& policy) {
  PairIndex::Entries merged;
  const auto n = static_cast<std::int64_t>(corpus.sentences.size());
#pragma omp parallel
  {
    PairIndex::Entries local;
#pragma omp for schedule(static) nowait
    for (std::int64_t i = 0; i < n; ++i) {
      CountSentence(corpus.sentences[static_cast<std::size_t>(i)], policy, &local);
    }
#pragma omp critical(treeconv_count_arcs)
    MergeInto(std::move(local), &merged);
  }
  return merged;
}

PairIndex::Entries CountArcsSerial(const Corpus& corpus,
                                   const NormalizationPolicy& policy) {
  PairIndex::Entries entries;
  for (const Sentence& s : corpus.sentences) CountSentence(s, policy, &entries);
  return entries;
}

double Dot(std::span<const float> a, std::span<const float> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sum += static_cast<double>(a[i]) * static_cast<double>(b[i]);
  }
  return sum;
}

std::vector<ScoredRow> TopKScan(std::span<const float> matrix, std::size_t dim,
                                std::span<const double> norms, std::size_t query,
                                std::size_t k) {
  const auto rows = static_cast<std::int64_t>(norms.size());
  std::vector<ScoredRow> candidates;
  if (k == 0) return candidates;
#pragma omp parallel
  {
    // Max-heap on "worse", so top() is the weakest kept row.
    std::priority_queue<ScoredRow, std::vector<ScoredRow>, WorseFirst> heap;
#pragma omp for schedule(static) nowait
    for (std::int64_t r = 0; r < rows; ++r) {
      const auto row = static_cast<std::size_t>(r);
      if (row == query) continue;
      const ScoredRow scored{row, Cosine(matrix, dim, norms, query, row)};
      if (heap.size() < k) {
        heap.push(scored);
      } else if (Ranks(scored, heap.top())) {
        heap.pop();
        heap.push(scored);
      }
    }
#pragma omp critical(treeconv_topk_merge)
    while (!heap.empty()) {
      candidates.push_back(heap.top());
      heap.pop();
    }
  }
  std::sort(candidates.begin(), candidates.end(), Ranks);
  if (candidates.size() > k) candidates.resize(k);
  return candidates;
}

std::vector<ScoredRow> TopKScanSerial(std::span<const float> matrix, std::size_t dim,
                                      std::span<const double> norms,
                                      std::size_t query, std::size_t k) {
  std::vector<ScoredRow> all;
  all.reserve(norms.size());
  for (std::size_t row = 0; row < norms.size(); ++row) {
    if (row == query) continue;
    all.push_back({row, Cosine(matrix, dim, norms, query, row)});
  }
  const std::size_t keep = std::min(k, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(keep),
                    all.end(), Ranks);
  all.resize(keep);
  return all;
}

std::vector<SentenceTally> TallySentences(const Corpus& gold, const Corpus& predicted,
                                          bool exclude_punct) {
  std::vector<SentenceTally> tallies(gold.sentences.size());
  const auto n = static_cast<std::int64_t>(tallies.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto s = static_cast<std::size_t>(i);
    tallies[s] = TallyOne(gold.sentences[s], predicted.sentences[s], exclude_punct);
  }
  return tallies;
}

std::vector<SentenceTally> TallySentencesSerial(const Corpus& gold,
                                                const Corpus& predicted,
                                                bool exclude_punct) {
  std::vector<SentenceTally> tallies;
  tallies.reserve(gold.sentences.size());
  for (std::size_t s = 0; s < gold.sentences.size(); ++s) {
    tallies.push_back(TallyOne(gold.sentences[s], predicted.sentences[s], exclude_punct));
  }
  return tallies;
}

std::vector<double> BootstrapDeltas(std::span<const std::int64_t> correct_a,
                                    std::span<const std::int64_t> correct_b,
                                    std::span<const std::int64_t> tokens,
                                    std::size_t resamples, std::uint64_t seed) {
  std::vector<double> deltas(resamples, 0.0);
  if (tokens.empty()) return deltas;
  const auto count = static_cast<std::int64_t>(resamples);
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < count; ++b) {
    const auto r = static_cast<std::size_t>(b);
    deltas[r] = ResampleDelta(correct_a, correct_b, tokens, ResampleSeed(seed, r));
  }
  return deltas;
}

std::vector<double> BootstrapDeltasSerial(std::span<const std::int64_t> correct_a,
                                          std::span<const std::int64_t> correct_b,
                                          std::span<const std::int64_t> tokens,
                                          std::size_t resamples, std::uint64_t seed) {
  std::vector<double> deltas(resamples, 0.0);
  if (tokens.empty()) return deltas;
  for (std::size_t r = 0; r < resamples; ++r) {
    deltas[r] = ResampleDelta(correct_a, correct_b, tokens, ResampleSeed(seed, r));
  }
  return deltas;
}

}  // namespace treeconv::kernels
