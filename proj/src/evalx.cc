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

#include "treeconv/evalx.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <tuple>

#include "json.hpp"
#include "treeconv/errors.h"
#include "treeconv/pair_index.h"

namespace treeconv {
namespace {

double Percent(std::int64_t part, std::int64_t whole) {
  return whole == 0 ? 0.0 : 100.0 * static_cast<double>(part) / static_cast<double>(whole);
}

std::vector<ConfusionEntry> Summarize(
    const std::map<std::string, RelationCounts>& wrong, std::int64_t threshold) {
  std::vector<ConfusionEntry> out;
  for (const auto& [gold_relation, predicted] : wrong) {
    std::int64_t total = 0;
    for (const auto& [label, count] : predicted) total += count;
    if (total <= threshold) continue;
    const RelationVote modal = *MostFrequent(predicted);
    out.push_back({gold_relation, total, modal.relation, modal.count});
  }
  return out;
}

}  // namespace

void CheckAlignment(const Corpus& gold, const Corpus& predicted) {
  if (gold.size() != predicted.size()) {
    throw AlignmentError(std::min(gold.size(), predicted.size()),
                         "gold has " + std::to_string(gold.size()) +
                             " sentences, prediction has " +
                             std::to_string(predicted.size()));
  }
  for (std::size_t s = 0; s < gold.size(); ++s) {
    const Sentence& g = gold.sentences[s];
    const Sentence& p = predicted.sentences[s];
    if (g.tokens.size() != p.tokens.size()) {
      throw AlignmentError(s, "token count " + std::to_string(g.tokens.size()) + " vs " +
                                  std::to_string(p.tokens.size()));
    }
    for (std::size_t i = 0; i < g.tokens.size(); ++i) {
      if (g.tokens[i].form != p.tokens[i].form) {
        throw AlignmentError(s, "token " + std::to_string(i + 1) + " form '" +
                                    g.tokens[i].form + "' vs '" + p.tokens[i].form + "'");
      }
    }
  }
}

ScoreResult Score(const Corpus& gold, const Corpus& predicted,
                  const ScoreOptions& options) {
  CheckAlignment(gold, predicted);
  ScoreResult result;
  result.per_sentence = kernels::TallySentences(gold, predicted, options.exclude_punct);
  std::int64_t heads = 0;
  std::int64_t labeled = 0;
  for (const kernels::SentenceTally& t : result.per_sentence) {
    heads += t.heads;
    labeled += t.labeled;
    result.counted_tokens += t.tokens;
  }
  result.uas = Percent(heads, result.counted_tokens);
  result.las = Percent(labeled, result.counted_tokens);
  return result;
}

std::string ScoreLine(const ScoreResult& score) {
  char buffer[96];
  std::snprintf(buffer, sizeof(buffer), "UAS %.2f LAS %.2f (%lld tokens)", score.uas,
                score.las, static_cast<long long>(score.counted_tokens));
  return buffer;
}

std::string ScoreToJson(const ScoreResult& score) {
  nlohmann::ordered_json doc;
  doc["uas"] = std::round(score.uas * 100.0) / 100.0;
  doc["las"] = std::round(score.las * 100.0) / 100.0;
  doc["tokens"] = score.counted_tokens;
  return doc.dump(2) + "\n";
}

SignificanceResult CompareSignificance(const Corpus& gold, const Corpus& pred_a,
                                       const Corpus& pred_b,
                                       const SignificanceConfig& config) {
  if (!(config.alpha > 0.0 && config.alpha < 1.0)) {
    throw Error("alpha must lie strictly between 0 and 1");
  }
  if (config.resamples == 0) throw Error("resamples must be positive");
  const ScoreOptions options{config.exclude_punct};
  const ScoreResult a = Score(gold, pred_a, options);
  const ScoreResult b = Score(gold, pred_b, options);

  const bool las = config.metric == Metric::kLas;
  std::vector<std::tuple<std::int64_t, std::int64_t, std::int64_t>> rows;
  rows.reserve(a.per_sentence.size());
  for (std::size_t s = 0; s < a.per_sentence.size(); ++s) {
    const kernels::SentenceTally& ta = a.per_sentence[s];
    const kernels::SentenceTally& tb = b.per_sentence[s];
    rows.emplace_back(las ? ta.labeled : ta.heads, las ? tb.labeled : tb.heads, ta.tokens);
  }
  std::sort(rows.begin(), rows.end());
  std::vector<std::int64_t> correct_a;
  std::vector<std::int64_t> correct_b;
  std::vector<std::int64_t> tokens;
  std::int64_t sum_a = 0;
  std::int64_t sum_b = 0;
  std::int64_t sum_tokens = 0;
  for (const auto& [ca, cb, t] : rows) {
    correct_a.push_back(ca);
    correct_b.push_back(cb);
    tokens.push_back(t);
    sum_a += ca;
    sum_b += cb;
    sum_tokens += t;
  }

  SignificanceResult result;
  result.metric_a = Percent(sum_a, sum_tokens);
  result.metric_b = Percent(sum_b, sum_tokens);
  result.better = sum_a > sum_b ? Better::kA : (sum_b > sum_a ? Better::kB : Better::kTie);
  const double observed = sum_tokens == 0 ? 0.0
                                          : 100.0 * static_cast<double>(sum_a - sum_b) /
                                                static_cast<double>(sum_tokens);
  const std::vector<double> deltas =
      kernels::BootstrapDeltas(correct_a, correct_b, tokens, config.resamples, config.seed);
  std::size_t extreme = 0;
  for (double d : deltas) {
    if (std::abs(d - observed) >= std::abs(observed) - 1e-12) ++extreme;
  }
  result.p_value = static_cast<double>(extreme) / static_cast<double>(deltas.size());
  result.significant = result.p_value < config.alpha;
  return result;
}

std::string SignificanceToJson(const SignificanceResult& result,
                               const SignificanceConfig& config) {
  nlohmann::ordered_json doc;
  doc["method"] = kSignificanceMethod;
  doc["metric"] = config.metric == Metric::kLas ? "LAS" : "UAS";
  doc["resamples"] = config.resamples;
  doc["seed"] = config.seed;
  doc["alpha"] = config.alpha;
  doc["metric_a"] = result.metric_a;
  doc["metric_b"] = result.metric_b;
  doc["p_value"] = result.p_value;
  doc["better"] = result.better == Better::kA ? "a" : (result.better == Better::kB ? "b" : "tie");
  doc["significant"] = result.significant;
  return doc.dump(2) + "\n";
}

PredictionAnalysis AnalyzePredictions(const Corpus& gold, const Corpus& pred_unconverted,
                                      const Corpus& pred_converted,
                                      std::int64_t threshold) {
  CheckAlignment(gold, pred_unconverted);
  CheckAlignment(gold, pred_converted);
  std::map<std::string, RelationCounts> wrong_unconverted;
  std::map<std::string, RelationCounts> wrong_converted;
  for (std::size_t s = 0; s < gold.size(); ++s) {
    const Sentence& g = gold.sentences[s];
    for (std::size_t i = 0; i < g.tokens.size(); ++i) {
      const std::string& expected = g.tokens[i].deprel;
      const std::string& u = pred_unconverted.sentences[s].tokens[i].deprel;
      const std::string& c = pred_converted.sentences[s].tokens[i].deprel;
      const bool u_wrong = u != expected;
      const bool c_wrong = c != expected;
      if (u_wrong && !c_wrong) ++wrong_unconverted[expected][u];
      if (c_wrong && !u_wrong) ++wrong_converted[expected][c];
    }
  }
  return {Summarize(wrong_unconverted, threshold), Summarize(wrong_converted, threshold)};
}

std::string ConfusionToTsv(const std::vector<ConfusionEntry>& entries) {
  std::string out = "gold_relation\tincorrect_predictions\tmost_frequent_incorrect_label\tcount\n";
  for (const ConfusionEntry& e : entries) {
    out += e.gold_relation + '\t' + std::to_string(e.incorrect_predictions) + '\t' +
           e.most_frequent_incorrect_label + '\t' + std::to_string(e.count) + '\n';
  }
  return out;
}

}  // namespace treeconv
