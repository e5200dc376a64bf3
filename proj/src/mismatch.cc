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

#include "treeconv/mismatch.h"

#include <algorithm>
#include <tuple>

#include "json.hpp"
#include "treeconv/errors.h"

namespace treeconv {
namespace {

std::string JoinRelations(const std::set<std::string>& relations) {
  std::string out;
  for (const std::string& r : relations) {
    if (!out.empty()) out += '|';
    out += r;
  }
  return out;
}

}  // namespace

const Mismatch* MismatchSet::Find(const PairKey& key, const std::string& relation) const {
  const auto it = std::lower_bound(
      items.begin(), items.end(), std::tie(key, relation),
      [](const Mismatch& m, const std::tuple<const PairKey&, const std::string&>& probe) {
        return std::tie(m.key, m.augment_relation) < probe;
      });
  if (it == items.end() || it->key != key || it->augment_relation != relation) {
    return nullptr;
  }
  return &*it;
}

MismatchSet Detect(const PairIndex& base, const PairIndex& augment) {
  if (!(base.policy() == augment.policy())) throw PolicyMismatch();
  MismatchSet out;
  out.base_source = base.source();
  out.augment_source = augment.source();
  // Both maps iterate in key order and RelationCounts in label order, so the
  // items come out sorted.
  for (const auto& [key, counts] : augment.entries()) {
    const auto base_it = base.entries().find(key);
    const RelationCounts* base_counts =
        base_it == base.entries().end() ? nullptr : &base_it->second;
    for (const auto& [relation, count] : counts) {
      if (count < 1) continue;
      if (base_counts != nullptr && base_counts->contains(relation)) continue;
      Mismatch m{key, relation, count, {}};
      if (base_counts != nullptr) {
        for (const auto& [base_relation, base_count] : *base_counts) {
          if (base_count >= 1) m.base_relations.insert(base_relation);
        }
      }
      out.items.push_back(std::move(m));
    }
  }
  return out;
}

MismatchSummary Summarize(const MismatchSet& mismatches) {
  MismatchSummary summary;
  const PairKey* previous = nullptr;
  for (const Mismatch& m : mismatches.items) {
    if (previous == nullptr || *previous != m.key) ++summary.pairs;
    previous = &m.key;
    ++summary.items;
    summary.arcs += m.augment_count;
    summary.relation_histogram[m.augment_relation] += m.augment_count;
  }
  return summary;
}

std::string MismatchesToTsv(const MismatchSet& mismatches) {
  std::string out;
  for (const Mismatch& m : mismatches.items) {
    out += m.key.head_form + '\t' + m.key.dep_form + '\t' + m.augment_relation + '\t' +
           std::to_string(m.augment_count) + '\t' + JoinRelations(m.base_relations) +
           '\n';
  }
  return out;
}

std::string MismatchesToJson(const MismatchSet& mismatches) {
  const MismatchSummary summary = Summarize(mismatches);
  nlohmann::ordered_json doc;
  doc["base_source"] = mismatches.base_source;
  doc["augment_source"] = mismatches.augment_source;
  doc["summary"] = {{"pairs", summary.pairs},
                    {"items", summary.items},
                    {"arcs", summary.arcs},
                    {"relation_histogram", summary.relation_histogram}};
  nlohmann::ordered_json items = nlohmann::ordered_json::array();
  for (const Mismatch& m : mismatches.items) {
    items.push_back({{"head_form", m.key.head_form},
                     {"dep_form", m.key.dep_form},
                     {"augment_relation", m.augment_relation},
                     {"augment_count", m.augment_count},
                     {"base_relations", m.base_relations}});
  }
  doc["items"] = std::move(items);
  return doc.dump(2) + "\n";
}

}  // namespace treeconv
