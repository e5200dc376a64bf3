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

#ifndef TREECONV_MISMATCH_H_
#define TREECONV_MISMATCH_H_

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "treeconv/pair_index.h"

namespace treeconv {

// A relation seen with a word pair in the augment corpus but never with that
// pair in the base corpus.
struct Mismatch {
  PairKey key;
  std::string augment_relation;
  std::int64_t augment_count = 0;
  std::set<std::string> base_relations;  // empty when the base lacks the pair

  friend bool operator==(const Mismatch&, const Mismatch&) = default;
};

struct MismatchSet {
  // Sorted by (head_form, dep_form, augment_relation), no duplicates.
  std::vector<Mismatch> items;
  std::string base_source;
  std::string augment_source;

  // `key` must be normalized.
  const Mismatch* Find(const PairKey& key, const std::string& relation) const;
  bool empty() const { return items.empty(); }
  std::size_t size() const { return items.size(); }
};

struct MismatchSummary {
  std::int64_t pairs = 0;
  std::int64_t items = 0;
  std::int64_t arcs = 0;
  // Augment relation -> affected arc occurrences.
  std::map<std::string, std::int64_t> relation_histogram;

  friend bool operator==(const MismatchSummary&, const MismatchSummary&) = default;
};

// Throws PolicyMismatch when the indexes were normalized differently.
MismatchSet Detect(const PairIndex& base, const PairIndex& augment);

MismatchSummary Summarize(const MismatchSet& mismatches);

// head_form, dep_form, augment_relation, augment_count, base relations
// joined by "|".
std::string MismatchesToTsv(const MismatchSet& mismatches);
std::string MismatchesToJson(const MismatchSet& mismatches);

}  // namespace treeconv

#endif  // TREECONV_MISMATCH_H_
