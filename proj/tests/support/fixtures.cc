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

#include "support/fixtures.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include <unistd.h>

#include "treeconv/random.h"

namespace treeconv::testing {

namespace {

Token MakeToken(int id, std::string form, int head, std::string deprel) {
  Token t;
  t.id = id;
  t.form = std::move(form);
  t.lemma = "_";
  t.upos = "X";
  t.xpos = "_";
  t.feats = "_";
  t.head = head;
  t.deprel = std::move(deprel);
  t.deps = "_";
  t.misc = "_";
  return t;
}

}  // namespace

Corpus PairCorpus(const std::vector<ArcSpec>& arcs, const std::string& source) {
  Corpus corpus;
  corpus.source_path = source;
  for (const ArcSpec& arc : arcs) {
    for (int i = 0; i < arc.count; ++i) {
      Sentence s;
      s.tokens.push_back(MakeToken(1, arc.head, 0, "root"));
      s.tokens.push_back(MakeToken(2, arc.dep, 1, arc.relation));
      corpus.sentences.push_back(std::move(s));
    }
  }
  return corpus;
}

Corpus SuchAsBase() { return PairCorpus({{"such", "as", "fixed", 35}}, "A"); }

Corpus SuchAsAugment() {
  return PairCorpus({{"such", "as", "mwe", 20}, {"such", "as", "advmod", 5}}, "B");
}

Corpus HaveNotBase() {
  return PairCorpus({{"have", "n't", "dep", 9},
                     {"has", "n't", "neg", 5},
                     {"would", "n't", "neg", 5}},
                    "A");
}

Corpus HaveNotAugment() { return PairCorpus({{"have", "n't", "advmod", 6}}, "B"); }

std::string HaveNotVectors() {
  return "6 3\n"
         "have 1.0 0.1 0.0\n"
         "has 0.95 0.15 0.0\n"
         "would 0.9 0.3 0.05\n"
         "n't 0.0 0.0 1.0\n"
         "not 0.05 0.0 0.98\n"
         "cat -0.5 0.8 0.1\n";
}

Corpus HandCountedGold() {
  Corpus c;
  Sentence s;
  s.tokens = {MakeToken(1, "The", 2, "det"), MakeToken(2, "cat", 3, "nsubj"),
              MakeToken(3, "sat", 0, "root"), MakeToken(4, "on", 5, "case"),
              MakeToken(5, "mats", 3, "obl")};
  c.sentences.push_back(std::move(s));
  return c;
}

Corpus HandCountedPrediction() {
  Corpus c;
  Sentence s;
  // Heads right: The, cat, sat. Labels right among those: The, sat.
  s.tokens = {MakeToken(1, "The", 2, "det"), MakeToken(2, "cat", 3, "obj"),
              MakeToken(3, "sat", 0, "root"), MakeToken(4, "on", 3, "case"),
              MakeToken(5, "mats", 4, "obl")};
  c.sentences.push_back(std::move(s));
  return c;
}

std::string RichConllu() {
  return "# newdoc id = d1\n"
         "# sent_id = 1\n"
         "# text = I don't know.\n"
         "1\tI\tI\tPRON\tPRP\tCase=Nom\t4\tnsubj\t_\t_\n"
         "2-3\tdon't\t_\t_\t_\t_\t_\t_\t_\t_\n"
         "2\tdo\tdo\tAUX\tVBP\t_\t4\taux\t_\t_\n"
         "3\tn't\tnot\tPART\tRB\t_\t4\tadvmod\t_\t_\n"
         "4\tknow\tknow\tVERB\tVB\t_\t0\troot\t_\tSpaceAfter=No\n"
         "4.1\tknew\tknow\tVERB\t_\t_\t_\t_\t0:root\t_\n"
         "5\t.\t.\tPUNCT\t.\t_\t4\tpunct\t_\t_\n"
         "\n"
         "# sent_id = 2\n"
         "1\tSuch\tsuch\tADJ\tJJ\t_\t0\troot\t_\t_\n"
         "2\tas\tas\tADP\tIN\t_\t1\tfixed\t_\t_\n"
         "\n";
}

Corpus RandomCorpus(std::mt19937_64& rng, const RandomCorpusParams& params) {
  Corpus corpus;
  const std::size_t sentences =
      params.min_sentences +
      UniformBelow(rng, params.max_sentences - params.min_sentences + 1);
  for (std::size_t s = 0; s < sentences; ++s) {
    const std::size_t n = 1 + UniformBelow(rng, params.max_length);
    // Attach tokens in a random order, each to an already attached token.
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[UniformBelow(rng, i)]);
    std::vector<int> heads(n, 0);
    for (std::size_t i = 1; i < n; ++i) {
      heads[order[i]] = static_cast<int>(order[UniformBelow(rng, i)]) + 1;
    }
    Sentence sentence;
    for (std::size_t i = 0; i < n; ++i) {
      const std::string& word = params.words[UniformBelow(rng, params.words.size())];
      const std::string relation =
          heads[i] == 0 ? "root" : params.relations[UniformBelow(rng, params.relations.size())];
      sentence.tokens.push_back(MakeToken(static_cast<int>(i) + 1, word, heads[i], relation));
    }
    corpus.sentences.push_back(std::move(sentence));
  }
  return corpus;
}

std::vector<VectorRow> RandomRows(std::mt19937_64& rng, const std::vector<std::string>& words,
                                  std::size_t dim) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<VectorRow> rows;
  for (const std::string& w : words) {
    VectorRow row{w, {}};
    for (std::size_t i = 0; i < dim; ++i) {
      row.values.push_back(static_cast<float>(std::round(normal(rng) * 1e4) / 1e4));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<VectorRow> RandomIntegerRows(std::mt19937_64& rng,
                                         const std::vector<std::string>& words,
                                         std::size_t dim) {
  std::vector<VectorRow> rows;
  for (const std::string& w : words) {
    VectorRow row{w, {}};
    for (std::size_t i = 0; i < dim; ++i) {
      row.values.push_back(static_cast<float>(static_cast<int>(UniformBelow(rng, 5)) - 2));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string RowsToText(const std::vector<VectorRow>& rows, bool header) {
  std::ostringstream out;
  if (header) out << rows.size() << ' ' << (rows.empty() ? 0 : rows[0].values.size()) << '\n';
  char buffer[32];
  for (const VectorRow& row : rows) {
    out << row.word;
    for (float v : row.values) {
      std::snprintf(buffer, sizeof(buffer), " %.9g", static_cast<double>(v));
      out << buffer;
    }
    out << '\n';
  }
  return out.str();
}

std::vector<std::string> NumberedWords(const std::string& prefix, std::size_t count) {
  std::vector<std::string> words;
  for (std::size_t i = 0; i < count; ++i) words.push_back(prefix + std::to_string(i));
  return words;
}

std::string MakeTempDir(const std::string& tag) {
  static int counter = 0;
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() /
                       ("treeconv_" + tag + "_" + std::to_string(::getpid()) + "_" +
                        std::to_string(counter++));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir.string();
}

}  // namespace treeconv::testing
