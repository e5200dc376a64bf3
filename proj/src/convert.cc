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

#include "treeconv/convert.h"

#include <algorithm>
#include <functional>
#include <optional>

#include "json.hpp"
#include "treeconv/errors.h"

namespace treeconv {
namespace {

using Json = nlohmann::ordered_json;

struct KeyDecision {
  std::optional<RelationVote> winner;  // empty: no base evidence
  RelationCounts pooled;
  std::vector<Evidence> evidence;
};

using Decider = std::function<KeyDecision(const PairKey&)>;

KeyDecision DecideLexical(const PairIndex& base, const PairKey& key) {
  KeyDecision decision;
  const RelationCounts* counts = base.Find(key);
  if (counts == nullptr) return decision;
  decision.pooled = *counts;
  decision.winner = MostFrequent(*counts);
  decision.evidence.push_back({key, decision.winner->relation, decision.winner->count});
  return decision;
}

// The word itself followed by its neighbors, normalized and deduplicated.
std::vector<std::string> Expand(const std::string& word, const VectorStore& store,
                                std::size_t k, const NormalizationPolicy& policy) {
  std::vector<std::string> words{word};
  for (const Neighbor& n : store.TopK(word, k)) {
    std::string candidate = policy.Apply(n.word);
    if (std::find(words.begin(), words.end(), candidate) == words.end()) {
      words.push_back(std::move(candidate));
    }
  }
  return words;
}

KeyDecision DecideEmbedding(const PairIndex& base, const VectorStore& store,
                            const ConverterConfig& config, const PairKey& key) {
  const std::vector<std::string> heads = Expand(key.head_form, store, config.k, config.policy);
  const std::vector<std::string> deps = Expand(key.dep_form, store, config.k, config.policy);

  std::vector<std::pair<PairKey, const RelationCounts*>> survivors;
  for (const std::string& h : heads) {
    for (const std::string& d : deps) {
      PairKey candidate{h, d};
      if (const RelationCounts* counts = base.Find(candidate)) {
        survivors.emplace_back(std::move(candidate), counts);
      }
    }
  }
  KeyDecision decision;
  if (survivors.empty()) return decision;
  for (const auto& [candidate, counts] : survivors) {
    for (const auto& [relation, count] : *counts) decision.pooled[relation] += count;
  }
  decision.winner = MostFrequent(decision.pooled);
  for (const auto& [candidate, counts] : survivors) {
    const auto it = counts->find(decision.winner->relation);
    if (it != counts->end()) {
      decision.evidence.push_back({candidate, it->first, it->second});
    }
  }
  return decision;
}

ConversionReport Plan(const Corpus& augment, const MismatchSet& mismatches,
                      const ConverterConfig& config, const Decider& decide) {
  std::vector<PairKey> keys;
  for (const Mismatch& m : mismatches.items) {
    if (keys.empty() || keys.back() != m.key) keys.push_back(m.key);
  }
  // Each key's decision is independent and lands in its own slot.
  std::vector<KeyDecision> decisions(keys.size());
  const auto key_count = static_cast<std::int64_t>(keys.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < key_count; ++i) {
    const auto slot = static_cast<std::size_t>(i);
    decisions[slot] = decide(keys[slot]);
  }

  ConversionReport report;
  report.strategy = config.strategy;
  for (std::size_t s = 0; s < augment.sentences.size(); ++s) {
    const Sentence& sentence = augment.sentences[s];
    bool drop = false;
    for (const Token& token : sentence.tokens) {
      if (token.head <= 0) continue;
      PairKey key{config.policy.Apply(sentence.HeadForm(token)),
                  config.policy.Apply(token.form)};
      if (mismatches.Find(key, token.deprel) == nullptr) continue;
      const auto it = std::lower_bound(keys.begin(), keys.end(), key);
      const KeyDecision& decision = decisions[static_cast<std::size_t>(it - keys.begin())];
      if (!decision.winner) {
        report.skipped.push_back(
            {s, token.id, std::move(key), token.deprel, SkipReason::kNoBaseEvidence});
        drop = drop || config.on_no_replacement == NoReplacement::kDropSentence;
        continue;
      }
      if (decision.winner->relation == token.deprel) {
        report.skipped.push_back(
            {s, token.id, std::move(key), token.deprel, SkipReason::kAlreadyWinning});
        continue;
      }
      ++report.totals[{token.deprel, decision.winner->relation}];
      report.applied.push_back({s, token.id, std::move(key), token.deprel,
                                decision.winner->relation, decision.evidence,
                                decision.pooled, config.strategy});
    }
    if (drop) report.dropped_sentences.push_back(s);
  }
  return report;
}

Json KeyJson(const PairKey& key) {
  return {{"head_form", key.head_form}, {"dep_form", key.dep_form}};
}

PairKey KeyFromJson(const Json& j) {
  return {j.at("head_form").get<std::string>(), j.at("dep_form").get<std::string>()};
}

SkipReason ParseSkipReason(std::string_view name) {
  if (name == "NoBaseEvidence") return SkipReason::kNoBaseEvidence;
  if (name == "AlreadyWinning") return SkipReason::kAlreadyWinning;
  throw Error("unknown skip reason '" + std::string(name) + "'");
}

}  // namespace

std::string_view StrategyName(Strategy strategy) {
  switch (strategy) {
    case Strategy::kLexical:
      return "lexical";
    case Strategy::kStaticEmbedding:
      return "static-embedding";
    case Strategy::kContextualEmbedding:
      return "contextual-embedding";
  }
  return "unknown";
}

Strategy ParseStrategy(std::string_view name) {
  if (name == "lexical") return Strategy::kLexical;
  if (name == "static-embedding") return Strategy::kStaticEmbedding;
  if (name == "contextual-embedding") return Strategy::kContextualEmbedding;
  throw Error("unknown strategy '" + std::string(name) + "'");
}

std::string_view SkipReasonName(SkipReason reason) {
  return reason == SkipReason::kNoBaseEvidence ? "NoBaseEvidence" : "AlreadyWinning";
}

bool IsEmbeddingStrategy(Strategy strategy) { return strategy != Strategy::kLexical; }

ConversionReport PlanLexical(const Corpus& augment, const PairIndex& base_index,
                             const MismatchSet& mismatches, const ConverterConfig& config) {
  return Plan(augment, mismatches, config, [&](const PairKey& key) {
    return DecideLexical(base_index, key);
  });
}

ConversionReport PlanEmbedding(const Corpus& augment, const PairIndex& base_index,
                               const MismatchSet& mismatches, const VectorStore& store,
                               const ConverterConfig& config) {
  return Plan(augment, mismatches, config, [&](const PairKey& key) {
    return DecideEmbedding(base_index, store, config, key);
  });
}

Corpus ApplyPlan(const Corpus& augment, const ConversionReport& report) {
  Corpus out = augment;
  for (const ConversionRecord& record : report.applied) {
    if (record.sentence_index >= out.sentences.size()) {
      throw StaleReport("record refers to missing sentence " +
                        std::to_string(record.sentence_index));
    }
    Sentence& sentence = out.sentences[record.sentence_index];
    if (record.token_id < 1 ||
        static_cast<std::size_t>(record.token_id) > sentence.tokens.size()) {
      throw StaleReport("record refers to missing token " +
                        std::to_string(record.sentence_index) + ":" +
                        std::to_string(record.token_id));
    }
    Token& token = sentence.tokens[static_cast<std::size_t>(record.token_id - 1)];
    if (token.deprel != record.old_relation) {
      throw StaleReport("token " + std::to_string(record.sentence_index) + ":" +
                        std::to_string(record.token_id) + " reads '" + token.deprel +
                        "', record expects '" + record.old_relation + "'");
    }
    token.deprel = record.new_relation;
  }
  if (!report.dropped_sentences.empty()) {
    std::vector<Sentence> kept;
    kept.reserve(out.sentences.size());
    for (std::size_t s = 0; s < out.sentences.size(); ++s) {
      if (!std::binary_search(report.dropped_sentences.begin(),
                              report.dropped_sentences.end(), s)) {
        kept.push_back(std::move(out.sentences[s]));
      }
    }
    out.sentences = std::move(kept);
  }
  return out;
}

ConversionResult ConvertLexical(const Corpus& augment, const PairIndex& base_index,
                                const MismatchSet& mismatches,
                                const ConverterConfig& config) {
  ConversionReport report = PlanLexical(augment, base_index, mismatches, config);
  Corpus corpus = ApplyPlan(augment, report);
  return {std::move(corpus), std::move(report)};
}

ConversionResult ConvertEmbedding(const Corpus& augment, const PairIndex& base_index,
                                  const MismatchSet& mismatches, const VectorStore& store,
                                  const ConverterConfig& config) {
  ConversionReport report = PlanEmbedding(augment, base_index, mismatches, store, config);
  Corpus corpus = ApplyPlan(augment, report);
  return {std::move(corpus), std::move(report)};
}

ConversionResult DetectAndConvert(const Corpus& augment, const PairIndex& base_index,
                                  const VectorStore* store, const ConverterConfig& config) {
  const MismatchSet mismatches = Detect(base_index, BuildIndex(augment, config.policy));
  if (!IsEmbeddingStrategy(config.strategy)) {
    return ConvertLexical(augment, base_index, mismatches, config);
  }
  if (store == nullptr) throw MissingVectors();
  return ConvertEmbedding(augment, base_index, mismatches, *store, config);
}

std::string ReportToJson(const ConversionReport& report) {
  Json doc;
  doc["strategy"] = StrategyName(report.strategy);
  Json totals = Json::array();
  for (const auto& [change, count] : report.totals) {
    totals.push_back({{"old_relation", change.first},
                      {"new_relation", change.second},
                      {"count", count}});
  }
  doc["totals"] = std::move(totals);
  doc["dropped_sentences"] = report.dropped_sentences;
  Json applied = Json::array();
  for (const ConversionRecord& r : report.applied) {
    Json evidence = Json::array();
    for (const Evidence& e : r.evidence) {
      Json item = KeyJson(e.key);
      item["relation"] = e.relation;
      item["count"] = e.count;
      evidence.push_back(std::move(item));
    }
    Json record{{"sentence_index", r.sentence_index},
                {"token_id", r.token_id},
                {"key", KeyJson(r.key)},
                {"old_relation", r.old_relation},
                {"new_relation", r.new_relation},
                {"strategy", StrategyName(r.strategy)},
                {"pooled", r.pooled}};
    record["evidence"] = std::move(evidence);
    applied.push_back(std::move(record));
  }
  doc["applied"] = std::move(applied);
  Json skipped = Json::array();
  for (const SkippedArc& s : report.skipped) {
    skipped.push_back({{"sentence_index", s.sentence_index},
                       {"token_id", s.token_id},
                       {"key", KeyJson(s.key)},
                       {"old_relation", s.old_relation},
                       {"reason", SkipReasonName(s.reason)}});
  }
  doc["skipped"] = std::move(skipped);
  return doc.dump(2) + "\n";
}

ConversionReport ReportFromJson(std::string_view text) {
  ConversionReport report;
  try {
    const Json doc = Json::parse(text);
    report.strategy = ParseStrategy(doc.at("strategy").get<std::string>());
    for (const Json& t : doc.at("totals")) {
      report.totals[{t.at("old_relation").get<std::string>(),
                     t.at("new_relation").get<std::string>()}] =
          t.at("count").get<std::int64_t>();
    }
    report.dropped_sentences = doc.at("dropped_sentences").get<std::vector<std::size_t>>();
    for (const Json& r : doc.at("applied")) {
      ConversionRecord record;
      record.sentence_index = r.at("sentence_index").get<std::size_t>();
      record.token_id = r.at("token_id").get<int>();
      record.key = KeyFromJson(r.at("key"));
      record.old_relation = r.at("old_relation").get<std::string>();
      record.new_relation = r.at("new_relation").get<std::string>();
      record.strategy = ParseStrategy(r.at("strategy").get<std::string>());
      record.pooled = r.at("pooled").get<RelationCounts>();
      for (const Json& e : r.at("evidence")) {
        record.evidence.push_back(
            {KeyFromJson(e), e.at("relation").get<std::string>(), e.at("count").get<std::int64_t>()});
      }
      report.applied.push_back(std::move(record));
    }
    for (const Json& s : doc.at("skipped")) {
      report.skipped.push_back({s.at("sentence_index").get<std::size_t>(),
                                s.at("token_id").get<int>(), KeyFromJson(s.at("key")),
                                s.at("old_relation").get<std::string>(),
                                ParseSkipReason(s.at("reason").get<std::string>())});
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed conversion report: ") + e.what());
  }
  return report;
}

std::string ReportToTsv(const ConversionReport& report) {
  std::string out;
  for (const auto& [change, count] : report.totals) {
    out += change.first + '\t' + change.second + '\t' + std::to_string(count) + '\n';
  }
  return out;
}

}  // namespace treeconv
