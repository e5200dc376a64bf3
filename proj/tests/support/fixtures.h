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

#ifndef TREECONV_TESTS_SUPPORT_FIXTURES_H_
#define TREECONV_TESTS_SUPPORT_FIXTURES_H_

// Hand-built and randomly generated corpora and vector tables for tests.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "treeconv/conllu.h"

namespace treeconv::testing {

struct ArcSpec {
  std::string head;
  std::string dep;
  std::string relation;
  int count = 1;
};

// One two-token sentence per arc occurrence: the head is the root (deprel
// "root") and the dependent attaches to it with `relation`. Root arcs are
// not indexed, so the pair index of the result contains exactly `arcs`.
Corpus PairCorpus(const std::vector<ArcSpec>& arcs, const std::string& source = "");

// Corpus A/B of the such/as example and the have/n't example.
Corpus SuchAsBase();       // (such, as): fixed x35
Corpus SuchAsAugment();    // (such, as): mwe x20, advmod x5
Corpus HaveNotBase();      // (have,n't) dep x9, (has,n't) neg x5, (would,n't) neg x5
Corpus HaveNotAugment();   // (have,n't) advmod x6
// "has" and "would" are the two nearest neighbors of "have".
std::string HaveNotVectors();

// Gold sentence "The cat sat on mats" and a prediction with 3 correct heads,
// 2 of them also correctly labeled.
Corpus HandCountedGold();
Corpus HandCountedPrediction();

// Small well-formed file with comments, a multiword range and an empty node.
std::string RichConllu();

struct RandomCorpusParams {
  std::size_t min_sentences = 1;
  std::size_t max_sentences = 30;
  std::size_t max_length = 8;
  std::vector<std::string> words = {"a", "b", "c", "d", "e", "f", "g", "h"};
  std::vector<std::string> relations = {"nsubj", "obj", "amod", "advmod", "case"};
};

// Random valid trees (single root, acyclic).
Corpus RandomCorpus(std::mt19937_64& rng, const RandomCorpusParams& params = {});

struct VectorRow {
  std::string word;
  std::vector<float> values;
};

// Gaussian rows, each component rounded to 4 decimals so the text form is
// exact.
std::vector<VectorRow> RandomRows(std::mt19937_64& rng, const std::vector<std::string>& words,
                                  std::size_t dim);
// Integer components in [-2, 2]; produces many exact ties.
std::vector<VectorRow> RandomIntegerRows(std::mt19937_64& rng,
                                         const std::vector<std::string>& words,
                                         std::size_t dim);
std::string RowsToText(const std::vector<VectorRow>& rows, bool header = true);

std::vector<std::string> NumberedWords(const std::string& prefix, std::size_t count);

// Fresh empty directory under the system temp dir.
std::string MakeTempDir(const std::string& tag);

}  // namespace treeconv::testing

#endif  // TREECONV_TESTS_SUPPORT_FIXTURES_H_
