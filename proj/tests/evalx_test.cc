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
#include <numeric>
#include <random>

#include "gtest/gtest.h"
#include "json.hpp"
#include "support/fixtures.h"
#include "support/oracles.h"
#include "treeconv/errors.h"

namespace treeconv {
namespace {

using ::treeconv::testing::PairCorpus;

// Randomly moves heads and relabels tokens of `gold`.
Corpus Corrupt(const Corpus& gold, std::mt19937_64& rng, double head_rate,
               double label_rate) {
  static const std::vector<std::string> kLabels = {"nsubj", "obj", "amod", "advmod",
                                                   "case", "punct"};
  Corpus out = gold;
  std::bernoulli_distribution move_head(head_rate);
  std::bernoulli_distribution relabel(label_rate);
  for (Sentence& s : out.sentences) {
    const int n = static_cast<int>(s.tokens.size());
    for (Token& t : s.tokens) {
      if (move_head(rng)) t.head = std::uniform_int_distribution<int>(0, n)(rng);
      if (relabel(rng)) {
        t.deprel = kLabels[std::uniform_int_distribution<std::size_t>(0, kLabels.size() - 1)(rng)];
      }
    }
  }
  return out;
}

TEST(ScoreTest, IdentityIsPerfect) {
  std::mt19937_64 rng(1);
  const Corpus gold = testing::RandomCorpus(rng);
  const ScoreResult r = Score(gold, gold);
  EXPECT_DOUBLE_EQ(r.uas, 100.0);
  EXPECT_DOUBLE_EQ(r.las, 100.0);
  EXPECT_EQ(r.counted_tokens, static_cast<std::int64_t>(gold.TokenCount()));
}

TEST(ScoreTest, HandCountedFixture) {
  const ScoreResult r = Score(testing::HandCountedGold(), testing::HandCountedPrediction());
  EXPECT_DOUBLE_EQ(r.uas, 60.0);
  EXPECT_DOUBLE_EQ(r.las, 40.0);
  EXPECT_EQ(ScoreLine(r), "UAS 60.00 LAS 40.00 (5 tokens)");
  const auto doc = nlohmann::json::parse(ScoreToJson(r));
  EXPECT_DOUBLE_EQ(doc["uas"].get<double>(), 60.0);
  EXPECT_EQ(doc["tokens"], 5);
}

TEST(ScoreTest, RelabelOnlyKeepsUasAtHundred) {
  const Corpus gold = testing::SuchAsAugment();
  Corpus converted = gold;
  for (Sentence& s : converted.sentences) s.tokens[1].deprel = "fixed";
  const ScoreResult r = Score(gold, converted);
  EXPECT_DOUBLE_EQ(r.uas, 100.0);
  EXPECT_DOUBLE_EQ(r.las, 50.0);
}

TEST(ScoreTest, MatchesOracleAndLasNeverExceedsUas) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 1000; ++trial) {
    const Corpus gold = testing::RandomCorpus(rng);
    const Corpus pred = Corrupt(gold, rng, 0.3, 0.3);
    const ScoreResult r = Score(gold, pred);
    const auto [uas, las] = testing::OracleScore(gold, pred);
    ASSERT_DOUBLE_EQ(r.uas, uas);
    ASSERT_DOUBLE_EQ(r.las, las);
    ASSERT_LE(r.las, r.uas);
  }
}

TEST(ScoreTest, SubtypesAreDistinctLabels) {
  const Corpus gold = PairCorpus({{"h", "d", "nsubj:pass", 1}});
  const Corpus pred = PairCorpus({{"h", "d", "nsubj", 1}});
  EXPECT_DOUBLE_EQ(Score(gold, pred).las, 50.0);
}

TEST(ScoreTest, PunctExclusion) {
  const Corpus gold = PairCorpus({{"h", ".", "punct", 1}, {"h", "d", "obj", 1}});
  Corpus pred = gold;
  pred.sentences[0].tokens[1].deprel = "obj";
  EXPECT_DOUBLE_EQ(Score(gold, pred).las, 75.0);
  const ScoreResult excluded = Score(gold, pred, {.exclude_punct = true});
  EXPECT_DOUBLE_EQ(excluded.las, 100.0);
  EXPECT_EQ(excluded.counted_tokens, 3);
}

TEST(AlignmentTest, MismatchesThrow) {
  const Corpus gold = PairCorpus({{"h", "d", "obj", 2}});
  EXPECT_THROW(Score(gold, PairCorpus({{"h", "d", "obj", 1}})), AlignmentError);
  EXPECT_THROW(Score(gold, PairCorpus({{"h", "e", "obj", 2}})), AlignmentError);
  Corpus longer = gold;
  longer.sentences[1].tokens.push_back(longer.sentences[1].tokens[1]);
  longer.sentences[1].tokens.back().id = 3;
  try {
    CheckAlignment(gold, longer);
    FAIL() << "expected AlignmentError";
  } catch (const AlignmentError& e) {
    EXPECT_EQ(e.sentence_index(), 1u);
  }
}

// Independent resampler: its own engine and distribution, no sorting.
double OracleP(const Corpus& gold, const Corpus& a, const Corpus& b, int resamples,
               unsigned seed) {
  std::vector<std::int64_t> ca, cb, t;
  for (std::size_t s = 0; s < gold.size(); ++s) {
    std::int64_t x = 0, y = 0;
    const auto& g = gold.sentences[s].tokens;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const Token& pa = a.sentences[s].tokens[i];
      const Token& pb = b.sentences[s].tokens[i];
      x += pa.head == g[i].head && pa.deprel == g[i].deprel;
      y += pb.head == g[i].head && pb.deprel == g[i].deprel;
    }
    ca.push_back(x);
    cb.push_back(y);
    t.push_back(static_cast<std::int64_t>(g.size()));
  }
  auto delta = [&](const std::vector<std::size_t>& idx) {
    double num = 0, den = 0;
    for (std::size_t j : idx) {
      num += static_cast<double>(ca[j] - cb[j]);
      den += static_cast<double>(t[j]);
    }
    return 100.0 * num / den;
  };
  std::vector<std::size_t> all(gold.size());
  std::iota(all.begin(), all.end(), 0);
  const double observed = delta(all);
  std::mt19937 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, gold.size() - 1);
  int extreme = 0;
  for (int r = 0; r < resamples; ++r) {
    std::vector<std::size_t> idx(gold.size());
    for (auto& j : idx) j = pick(rng);
    if (std::abs(delta(idx) - observed) >= std::abs(observed)) ++extreme;
  }
  return static_cast<double>(extreme) / resamples;
}

TEST(SignificanceTest, IdenticalPredictionsGivePOne) {
  std::mt19937_64 rng(3);
  const Corpus gold = testing::RandomCorpus(rng, {.min_sentences = 20});
  const Corpus pred = Corrupt(gold, rng, 0.2, 0.2);
  const SignificanceResult r = CompareSignificance(gold, pred, pred, {.resamples = 2000});
  EXPECT_DOUBLE_EQ(r.p_value, 1.0);
  EXPECT_EQ(r.better, Better::kTie);
  EXPECT_FALSE(r.significant);
}

TEST(SignificanceTest, MaximalSeparationIsSignificant) {
  std::mt19937_64 rng(4);
  testing::RandomCorpusParams params;
  params.min_sentences = params.max_sentences = 50;
  const Corpus gold = testing::RandomCorpus(rng, params);
  Corpus wrong = gold;
  for (Sentence& s : wrong.sentences) {
    for (Token& t : s.tokens) t.deprel = "wrong";
  }
  const SignificanceResult r = CompareSignificance(gold, gold, wrong, {});
  EXPECT_LT(r.p_value, 0.001);
  EXPECT_EQ(r.better, Better::kA);
  EXPECT_TRUE(r.significant);
  EXPECT_DOUBLE_EQ(r.metric_a, 100.0);
  EXPECT_DOUBLE_EQ(r.metric_b, 0.0);
}

TEST(SignificanceTest, AgreesWithIndependentBootstrap) {
  std::mt19937_64 rng(5);
  testing::RandomCorpusParams params;
  params.min_sentences = params.max_sentences = 100;
  for (int trial = 0; trial < 3; ++trial) {
    const Corpus gold = testing::RandomCorpus(rng, params);
    const Corpus a = Corrupt(gold, rng, 0.1, 0.2);
    const Corpus b = Corrupt(gold, rng, 0.1, 0.25);
    const SignificanceResult r = CompareSignificance(gold, a, b, {});
    EXPECT_NEAR(r.p_value, OracleP(gold, a, b, 10000, 99 + trial), 0.02);
  }
}

TEST(SignificanceTest, SentenceOrderDoesNotMatter) {
  std::mt19937_64 rng(6);
  testing::RandomCorpusParams params;
  params.min_sentences = params.max_sentences = 40;
  const Corpus gold = testing::RandomCorpus(rng, params);
  const Corpus a = Corrupt(gold, rng, 0.1, 0.2);
  const Corpus b = Corrupt(gold, rng, 0.1, 0.3);
  std::vector<std::size_t> order(gold.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  auto permute = [&](const Corpus& c) {
    Corpus out = c;
    for (std::size_t i = 0; i < order.size(); ++i) out.sentences[i] = c.sentences[order[i]];
    return out;
  };
  const SignificanceConfig config{.resamples = 3000};
  EXPECT_DOUBLE_EQ(CompareSignificance(gold, a, b, config).p_value,
                   CompareSignificance(permute(gold), permute(a), permute(b), config).p_value);
}

TEST(SignificanceTest, RejectsBadConfigAndReportsMethod) {
  const Corpus gold = testing::HandCountedGold();
  EXPECT_THROW(CompareSignificance(gold, gold, gold, {.alpha = 1.5}), Error);
  EXPECT_THROW(CompareSignificance(gold, gold, gold, {.resamples = 0}), Error);
  const SignificanceConfig config{.resamples = 10, .metric = Metric::kUas};
  const auto doc = nlohmann::json::parse(
      SignificanceToJson(CompareSignificance(gold, gold, gold, config), config));
  EXPECT_EQ(doc["method"], kSignificanceMethod);
  EXPECT_EQ(doc["metric"], "UAS");
}

// Gold `relation` arcs; `wrong` maps a predicted label to how many of them
// carry it in the unconverted output. The converted output is gold.
struct Triad {
  Corpus gold, unconverted, converted;
};

Triad BuildTriad(const std::string& relation,
                 const std::vector<std::pair<std::string, int>>& wrong, int correct) {
  int total = correct;
  for (const auto& [label, n] : wrong) total += n;
  Triad t;
  t.gold = PairCorpus({{"h", "d", relation, total}});
  t.unconverted = t.gold;
  t.converted = t.gold;
  std::size_t s = 0;
  for (const auto& [label, n] : wrong) {
    for (int i = 0; i < n; ++i) t.unconverted.sentences[s++].tokens[1].deprel = label;
  }
  return t;
}

TEST(PredictionAnalysisTest, OblRowWithModalNmod) {
  const Triad t = BuildTriad("obl", {{"nmod", 173}, {"obj", 20}, {"advmod", 14}}, 30);
  const PredictionAnalysis a = AnalyzePredictions(t.gold, t.unconverted, t.converted, 50);
  EXPECT_EQ(a.unconverted, (std::vector<ConfusionEntry>{{"obl", 207, "nmod", 173}}));
  EXPECT_TRUE(a.converted.empty());
  EXPECT_EQ(ConfusionToTsv(a.unconverted),
            "gold_relation\tincorrect_predictions\tmost_frequent_incorrect_label\tcount\n"
            "obl\t207\tnmod\t173\n");
}

TEST(PredictionAnalysisTest, ThresholdIsStrict) {
  const Triad t = BuildTriad("obl", {{"nmod", 50}}, 0);
  EXPECT_TRUE(AnalyzePredictions(t.gold, t.unconverted, t.converted, 50).unconverted.empty());
  EXPECT_EQ(AnalyzePredictions(t.gold, t.unconverted, t.converted, 49).unconverted.size(), 1u);
}

TEST(PredictionAnalysisTest, BothWrongTokensAreIgnored) {
  Triad t = BuildTriad("obl", {{"nmod", 60}}, 0);
  t.converted = t.unconverted;
  const PredictionAnalysis a = AnalyzePredictions(t.gold, t.unconverted, t.converted, 0);
  EXPECT_TRUE(a.unconverted.empty());
  EXPECT_TRUE(a.converted.empty());
}

TEST(PredictionAnalysisTest, ModalTieGoesToSmallestLabel) {
  const Triad t = BuildTriad("obl", {{"obj", 3}, {"nmod", 3}}, 0);
  const PredictionAnalysis a = AnalyzePredictions(t.gold, t.unconverted, t.converted, 0);
  EXPECT_EQ(a.unconverted, (std::vector<ConfusionEntry>{{"obl", 6, "nmod", 3}}));
}

TEST(PredictionAnalysisTest, MatchesBruteForceRecount) {
  std::mt19937_64 rng(7);
  testing::RandomCorpusParams params;
  params.min_sentences = params.max_sentences = 200;
  params.relations = {"obl", "nmod", "obj"};
  const Corpus gold = testing::RandomCorpus(rng, params);
  const Corpus u = Corrupt(gold, rng, 0.0, 0.5);
  const Corpus c = Corrupt(gold, rng, 0.0, 0.5);
  const std::int64_t threshold = 5;
  const PredictionAnalysis a = AnalyzePredictions(gold, u, c, threshold);

  auto brute = [&](const Corpus& mine, const Corpus& other) {
    std::vector<ConfusionEntry> out;
    std::set<std::string> relations;
    for (const Sentence& s : gold.sentences) {
      for (const Token& t : s.tokens) relations.insert(t.deprel);
    }
    std::int64_t uniquely_wrong = 0;
    for (const std::string& rel : relations) {
      std::map<std::string, std::int64_t> labels;
      std::int64_t wrong = 0;
      for (std::size_t s = 0; s < gold.size(); ++s) {
        for (std::size_t i = 0; i < gold.sentences[s].tokens.size(); ++i) {
          const std::string& g = gold.sentences[s].tokens[i].deprel;
          const std::string& m = mine.sentences[s].tokens[i].deprel;
          const std::string& o = other.sentences[s].tokens[i].deprel;
          if (g != rel || m == g || o != g) continue;
          ++wrong;
          ++labels[m];
        }
      }
      uniquely_wrong += wrong;
      if (wrong <= threshold) continue;
      std::string best;
      std::int64_t best_count = -1;
      for (const auto& [label, n] : labels) {
        if (n > best_count || (n == best_count && label < best)) {
          best = label;
          best_count = n;
        }
      }
      out.push_back({rel, wrong, best, best_count});
    }
    std::int64_t reported = 0;
    for (const ConfusionEntry& e : out) reported += e.incorrect_predictions;
    EXPECT_LE(reported, uniquely_wrong);
    return out;
  };
  EXPECT_EQ(a.unconverted, brute(u, c));
  EXPECT_EQ(a.converted, brute(c, u));
  EXPECT_FALSE(a.unconverted.empty());
}

}  // namespace
}  // namespace treeconv
