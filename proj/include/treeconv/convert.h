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

#ifndef TREECONV_CONVERT_H_
#define TREECONV_CONVERT_H_

// Relabeling of augment-corpus arcs whose (pair, relation) is unattested in
// the base corpus. Planning (deciding each replacement) is separated from
// ApplyPlan (mutating deprel fields) so that a plan can be inspected or
// stored before it is applied.

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "treeconv/conllu.h"
#include "treeconv/embed_store.h"
#include "treeconv/mismatch.h"
#include "treeconv/pair_index.h"

namespace treeconv {

enum class Strategy { kLexical, kStaticEmbedding, kContextualEmbedding };
enum class NoReplacement { kKeepOriginal, kDropSentence };
enum class SkipReason { kNoBaseEvidence, kAlreadyWinning };

std::string_view StrategyName(Strategy strategy);
Strategy ParseStrategy(std::string_view name);  // throws Error
std::string_view SkipReasonName(SkipReason reason);
bool IsEmbeddingStrategy(Strategy strategy);

struct ConverterConfig {
  Strategy strategy = Strategy::kLexical;
  std::size_t k = kDefaultNeighbors;  // embedding strategies only
  NormalizationPolicy policy;
  NoReplacement on_no_replacement = NoReplacement::kKeepOriginal;
};

struct Evidence {
  PairKey key;
  std::string relation;
  std::int64_t count = 0;

  friend bool operator==(const Evidence&, const Evidence&) = default;
};

struct ConversionRecord {
  std::size_t sentence_index = 0;
  int token_id = 0;
  PairKey key;
  std::string old_relation;
  std::string new_relation;
  // Base (pair, relation, count) triples that voted for new_relation.
  std::vector<Evidence> evidence;
  // Pooled counts over every surviving candidate pair, all labels.
  RelationCounts pooled;
  Strategy strategy = Strategy::kLexical;

  friend bool operator==(const ConversionRecord&, const ConversionRecord&) = default;
};

struct SkippedArc {
  std::size_t sentence_index = 0;
  int token_id = 0;
  PairKey key;
  std::string old_relation;
  SkipReason reason = SkipReason::kNoBaseEvidence;

  friend bool operator==(const SkippedArc&, const SkippedArc&) = default;
};

struct ConversionReport {
  Strategy strategy = Strategy::kLexical;
  std::vector<ConversionRecord> applied;
  std::vector<SkippedArc> skipped;
  // Sentences removed under NoReplacement::kDropSentence, ascending.
  std::vector<std::size_t> dropped_sentences;
  // (old relation, new relation) -> applied arcs.
  std::map<std::pair<std::string, std::string>, std::int64_t> totals;

  friend bool operator==(const ConversionReport&, const ConversionReport&) = default;
};

struct ConversionResult {
  Corpus corpus;
  ConversionReport report;
};

// Lexical plan: every mismatched arc whose pair occurs in the base takes the
// base's most frequent relation for that pair.
ConversionReport PlanLexical(const Corpus& augment, const PairIndex& base_index,
                             const MismatchSet& mismatches, const ConverterConfig& config);

// Embedding plan: candidate pairs are the product of {head} + top-k
// neighbors of the head and {dependent} + top-k neighbors of the dependent;
// the relation with the largest count pooled over all candidates attested
// in the base wins (ties to the smallest label).
ConversionReport PlanEmbedding(const Corpus& augment, const PairIndex& base_index,
                               const MismatchSet& mismatches, const VectorStore& store,
                               const ConverterConfig& config);

// Throws StaleReport when a record does not match the corpus.
Corpus ApplyPlan(const Corpus& augment, const ConversionReport& report);

ConversionResult ConvertLexical(const Corpus& augment, const PairIndex& base_index,
                                const MismatchSet& mismatches,
                                const ConverterConfig& config);
ConversionResult ConvertEmbedding(const Corpus& augment, const PairIndex& base_index,
                                  const MismatchSet& mismatches, const VectorStore& store,
                                  const ConverterConfig& config);

// Runs index building, detection and the strategy chosen in `config`.
// `store` may be null for the lexical strategy.
ConversionResult DetectAndConvert(const Corpus& augment, const PairIndex& base_index,
                                  const VectorStore* store, const ConverterConfig& config);

std::string ReportToJson(const ConversionReport& report);
ConversionReport ReportFromJson(std::string_view json);  // throws Error
// old_relation, new_relation, count
std::string ReportToTsv(const ConversionReport& report);

}  // namespace treeconv

#endif  // TREECONV_CONVERT_H_
