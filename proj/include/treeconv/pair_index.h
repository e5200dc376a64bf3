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

#ifndef TREECONV_PAIR_INDEX_H_
#define TREECONV_PAIR_INDEX_H_

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "treeconv/conllu.h"

namespace treeconv {

// Applied identically when building indexes, loading vectors and querying.
// Lowercasing folds ASCII letters only; other bytes pass through unchanged.
struct NormalizationPolicy {
  bool lowercase = false;

  std::string Apply(std::string_view form) const;

  friend bool operator==(const NormalizationPolicy&,
                         const NormalizationPolicy&) = default;
};

struct PairKey {
  std::string head_form;
  std::string dep_form;

  friend auto operator<=>(const PairKey&, const PairKey&) = default;
  friend bool operator==(const PairKey&, const PairKey&) = default;
};

// Relation label -> number of arcs carrying it. Labels compare as full
// strings, so "nsubj" and "nsubj:pass" are distinct.
using RelationCounts = std::map<std::string, std::int64_t>;

struct RelationVote {
  std::string relation;
  std::int64_t count = 0;

  friend bool operator==(const RelationVote&, const RelationVote&) = default;
};

// Head-dependent word pairs of one corpus and the relations each occurs
// with. Root arcs are not indexed.
class PairIndex {
 public:
  using Entries = std::map<PairKey, RelationCounts>;

  explicit PairIndex(NormalizationPolicy policy = {}, std::string source = "")
      : policy_(policy), source_(std::move(source)) {}

  const NormalizationPolicy& policy() const { return policy_; }
  const std::string& source() const { return source_; }
  const Entries& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  // `key` is normalized before lookup. Returns nullptr when absent.
  const RelationCounts* Find(const PairKey& key) const;
  bool Contains(const PairKey& key) const { return Find(key) != nullptr; }

  // `key` must already be normalized; `count` must be positive.
  void Add(const PairKey& key, const std::string& relation, std::int64_t count);

  // Sum of all counts.
  std::int64_t TotalArcs() const;

  PairKey Normalize(const PairKey& key) const {
    return {policy_.Apply(key.head_form), policy_.Apply(key.dep_form)};
  }

 private:
  NormalizationPolicy policy_;
  std::string source_;
  Entries entries_;
};

PairIndex BuildIndex(const Corpus& corpus, const NormalizationPolicy& policy);

// Highest count wins; ties go to the lexicographically smallest label.
std::optional<RelationVote> MostFrequent(const RelationCounts& counts);

std::optional<RelationVote> MostFrequentRelation(const PairIndex& index,
                                                 const PairKey& key);

std::set<std::string> RelationsOf(const PairIndex& index, const PairKey& key);

// Sorted TSV: head_form, dep_form, relation, count.
std::string DumpIndex(const PairIndex& index);
PairIndex LoadIndex(std::string_view text, const NormalizationPolicy& policy,
                    std::string source = "");

}  // namespace treeconv

#endif  // TREECONV_PAIR_INDEX_H_
