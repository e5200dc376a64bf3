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

#include "treeconv/pair_index.h"

#include <charconv>
#include <vector>

#include "treeconv/errors.h"
#include "treeconv/kernels.h"

namespace treeconv {

std::string NormalizationPolicy::Apply(std::string_view form) const {
  std::string out(form);
  if (lowercase) {
    for (char& c : out) {
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
  }
  return out;
}

const RelationCounts* PairIndex::Find(const PairKey& key) const {
  const auto it = entries_.find(Normalize(key));
  return it == entries_.end() ? nullptr : &it->second;
}

void PairIndex::Add(const PairKey& key, const std::string& relation,
                    std::int64_t count) {
  entries_[key][relation] += count;
}

std::int64_t PairIndex::TotalArcs() const {
  std::int64_t total = 0;
  for (const auto& [key, counts] : entries_) {
    for (const auto& [relation, count] : counts) total += count;
  }
  return total;
}

PairIndex BuildIndex(const Corpus& corpus, const NormalizationPolicy& policy) {
  PairIndex index(policy, corpus.source_path);
  for (auto& [key, counts] : kernels::CountArcs(corpus, policy)) {
    for (const auto& [relation, count] : counts) index.Add(key, relation, count);
  }
  return index;
}

std::optional<RelationVote> MostFrequent(const RelationCounts& counts) {
  std::optional<RelationVote> best;
  // std::map iterates labels in ascending order, so strict > keeps the
  // smallest label among equal counts.
  for (const auto& [relation, count] : counts) {
    if (!best || count > best->count) best = RelationVote{relation, count};
  }
  return best;
}

std::optional<RelationVote> MostFrequentRelation(const PairIndex& index,
                                                 const PairKey& key) {
  const RelationCounts* counts = index.Find(key);
  if (counts == nullptr) return std::nullopt;
  return MostFrequent(*counts);
}

std::set<std::string> RelationsOf(const PairIndex& index, const PairKey& key) {
  std::set<std::string> out;
  if (const RelationCounts* counts = index.Find(key)) {
    for (const auto& [relation, count] : *counts) {
      if (count >= 1) out.insert(relation);
    }
  }
  return out;
}

std::string DumpIndex(const PairIndex& index) {
  std::string out;
  for (const auto& [key, counts] : index.entries()) {
    for (const auto& [relation, count] : counts) {
      out += key.head_form;
      out += '\t';
      out += key.dep_form;
      out += '\t';
      out += relation;
      out += '\t';
      out += std::to_string(count);
      out += '\n';
    }
  }
  return out;
}

PairIndex LoadIndex(std::string_view text, const NormalizationPolicy& policy,
                    std::string source) {
  PairIndex index(policy, std::move(source));
  std::size_t line_number = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_number;
    if (line.empty()) continue;

    std::vector<std::string_view> fields;
    std::size_t field_start = 0;
    while (true) {
      const std::size_t tab = line.find('\t', field_start);
      fields.push_back(line.substr(field_start, tab - field_start));
      if (tab == std::string_view::npos) break;
      field_start = tab + 1;
    }
    if (fields.size() != 4 || fields[0].empty() || fields[1].empty() ||
        fields[2].empty()) {
      throw MalformedLine(line_number, "expected head, dependent, relation, count");
    }
    std::int64_t count = 0;
    const auto [ptr, ec] =
        std::from_chars(fields[3].data(), fields[3].data() + fields[3].size(), count);
    if (ec != std::errc() || ptr != fields[3].data() + fields[3].size() || count < 1) {
      throw MalformedLine(line_number, "count must be a positive integer");
    }
    index.Add({policy.Apply(fields[0]), policy.Apply(fields[1])}, std::string(fields[2]),
              count);
  }
  return index;
}

}  // namespace treeconv
