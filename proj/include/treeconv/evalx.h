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

#ifndef TREECONV_EVALX_H_
#define TREECONV_EVALX_H_

// Attachment scores, paired significance testing and the per-relation
// error tables used to compare an unconverted and a converted model.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "treeconv/conllu.h"
#include "treeconv/kernels.h"

namespace treeconv {

// Throws AlignmentError unless both corpora have the same sentence count,
// per-sentence token counts and forms.
void CheckAlignment(const Corpus& gold, const Corpus& predicted);

struct ScoreOptions {
  // Skip tokens whose gold relation is "punct".
  bool exclude_punct = false;
};

struct ScoreResult {
  double uas = 0.0;  // percent
  double las = 0.0;  // percent
  std::int64_t counted_tokens = 0;
  std::vector<kernels::SentenceTally> per_sentence;
};

// Root tokens count: a gold head of 0 must be predicted as 0. Labels compare
// as full strings.
ScoreResult Score(const Corpus& gold, const Corpus& predicted,
                  const ScoreOptions& options = {});

// "UAS 60.00 LAS 40.00 (5 tokens)"
std::string ScoreLine(const ScoreResult& score);
std::string ScoreToJson(const ScoreResult& score);

enum class Metric { kLas, kUas };
enum class Better { kA, kB, kTie };

inline constexpr char kSignificanceMethod[] = "paired-bootstrap (artifact choice)";

struct SignificanceConfig {
  double alpha = 0.05;
  std::size_t resamples = 10000;
  std::uint64_t seed = 1;
  Metric metric = Metric::kLas;
  bool exclude_punct = false;
};

struct SignificanceResult {
  double p_value = 1.0;
  Better better = Better::kTie;
  double metric_a = 0.0;
  double metric_b = 0.0;
  bool significant = false;  // p_value < alpha
};

// Paired bootstrap over sentences. Per-sentence (correct_a, correct_b,
// tokens) triples are sorted before resampling so that the result does not
// depend on sentence order. p is the fraction of resampled differences d_b
// with |d_b - d| >= |d|, where d is the observed difference a - b.
SignificanceResult CompareSignificance(const Corpus& gold, const Corpus& pred_a,
                                       const Corpus& pred_b,
                                       const SignificanceConfig& config);
std::string SignificanceToJson(const SignificanceResult& result,
                               const SignificanceConfig& config);

struct ConfusionEntry {
  std::string gold_relation;
  std::int64_t incorrect_predictions = 0;
  std::string most_frequent_incorrect_label;
  std::int64_t count = 0;

  friend bool operator==(const ConfusionEntry&, const ConfusionEntry&) = default;
};

struct PredictionAnalysis {
  std::vector<ConfusionEntry> unconverted;
  std::vector<ConfusionEntry> converted;
};

inline constexpr std::int64_t kDefaultConfusionThreshold = 50;

// Considers only tokens whose relation exactly one of the two systems gets
// wrong. Per system, wrong tokens are grouped by gold relation; groups with
// more than `threshold` tokens are reported with their modal wrong label
// (ties to the smallest label), sorted by gold relation.
PredictionAnalysis AnalyzePredictions(const Corpus& gold, const Corpus& pred_unconverted,
                                      const Corpus& pred_converted,
                                      std::int64_t threshold = kDefaultConfusionThreshold);

// gold_relation, incorrect_predictions, most_frequent_incorrect_label, count
std::string ConfusionToTsv(const std::vector<ConfusionEntry>& entries);

}  // namespace treeconv

#endif  // TREECONV_EVALX_H_
