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

#include "treeconv/embed_store.h"

#include <charconv>
#include <cmath>

#include "treeconv/conllu.h"
#include "treeconv/errors.h"
#include "treeconv/kernels.h"

namespace treeconv {
namespace {

std::vector<std::string_view> SplitSpaces(std::string_view line) {
  std::vector<std::string_view> parts;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\r') ++i;
    if (i > start) parts.push_back(line.substr(start, i - start));
  }
  return parts;
}

bool ParseSize(std::string_view text, std::size_t* value) {
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), *value);
  return ec == std::errc() && ptr == text.data() + text.size();
}

}  // namespace

void VectorStore::Append(std::string word, std::span<const float> values,
                         std::size_t line) {
  std::string key = policy_.Apply(word);
  if (rows_.contains(key)) {
    warnings_.push_back("line " + std::to_string(line) + ": duplicate word '" + key +
                        "' ignored");
    return;
  }
  double squared = 0.0;
  for (float v : values) squared += static_cast<double>(v) * static_cast<double>(v);
  const double norm = std::sqrt(squared);
  if (norm == 0.0) {
    zero_vectors_.push_back(key);
    warnings_.push_back("line " + std::to_string(line) + ": zero vector for '" + key + "'");
  }
  rows_.emplace(key, vocab_.size());
  vocab_.push_back(std::move(key));
  values_.insert(values_.end(), values.begin(), values.end());
  norms_.push_back(norm);
}

VectorStore VectorStore::Load(std::string_view text, const NormalizationPolicy& policy) {
  VectorStore store;
  store.policy_ = policy;
  std::optional<std::size_t> declared_count;
  std::vector<float> row;
  std::size_t data_rows = 0;
  std::size_t line_number = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_number;

    const std::vector<std::string_view> parts = SplitSpaces(line);
    if (parts.empty()) continue;
    if (line_number == 1 && parts.size() == 2) {
      std::size_t count = 0;
      std::size_t dim = 0;
      if (ParseSize(parts[0], &count) && ParseSize(parts[1], &dim)) {
        if (dim == 0) throw MalformedRow(line_number, "header declares dimension 0");
        declared_count = count;
        store.dim_ = dim;
        continue;
      }
    }
    if (parts.size() < 2) throw MalformedRow(line_number, "expected a word and a vector");
    const std::size_t components = parts.size() - 1;
    if (store.dim_ == 0) store.dim_ = components;
    if (components != store.dim_) {
      throw DimensionMismatch(line_number, store.dim_, components);
    }
    row.assign(components, 0.0f);
    for (std::size_t i = 0; i < components; ++i) {
      const std::string_view field = parts[i + 1];
      const auto [ptr, ec] =
          std::from_chars(field.data(), field.data() + field.size(), row[i]);
      if (ec != std::errc() || ptr != field.data() + field.size() ||
          !std::isfinite(row[i])) {
        throw MalformedRow(line_number, "bad component '" + std::string(field) + "'");
      }
    }
    ++data_rows;
    store.Append(std::string(parts[0]), row, line_number);
  }
  if (!IsValidUtf8(text)) store.warnings_.push_back("input is not valid UTF-8");
  if (declared_count && *declared_count != data_rows) {
    store.warnings_.push_back("header declares " + std::to_string(*declared_count) +
                              " rows, found " + std::to_string(data_rows));
  }
  return store;
}

VectorStore VectorStore::LoadFile(const std::string& path,
                                  const NormalizationPolicy& policy) {
  return Load(ReadFile(path), policy);
}

VectorStore VectorStore::FromRows(
    std::size_t dim, const std::vector<std::pair<std::string, std::vector<float>>>& rows,
    const NormalizationPolicy& policy) {
  VectorStore store;
  store.dim_ = dim;
  store.policy_ = policy;
  std::size_t line = 0;
  for (const auto& [word, values] : rows) {
    ++line;
    if (values.size() != dim) throw DimensionMismatch(line, dim, values.size());
    store.Append(word, values, line);
  }
  return store;
}

std::optional<std::size_t> VectorStore::IndexOf(std::string_view word) const {
  const auto it = rows_.find(policy_.Apply(word));
  if (it == rows_.end()) return std::nullopt;
  return it->second;
}

std::vector<Neighbor> VectorStore::TopK(std::string_view word, std::size_t k) const {
  const std::optional<std::size_t> row = IndexOf(word);
  if (!row || norms_[*row] == 0.0) return {};
  std::vector<Neighbor> out;
  for (const kernels::ScoredRow& s : kernels::TopKScan(values_, dim_, norms_, *row, k)) {
    out.push_back({vocab_[s.row], s.similarity});
  }
  return out;
}

std::vector<Neighbor> VectorStore::TopKSerial(std::string_view word, std::size_t k) const {
  const std::optional<std::size_t> row = IndexOf(word);
  if (!row || norms_[*row] == 0.0) return {};
  std::vector<Neighbor> out;
  for (const kernels::ScoredRow& s :
       kernels::TopKScanSerial(values_, dim_, norms_, *row, k)) {
    out.push_back({vocab_[s.row], s.similarity});
  }
  return out;
}

double VectorStore::Similarity(std::size_t a, std::size_t b) const {
  if (norms_[a] == 0.0 || norms_[b] == 0.0) return 0.0;
  return kernels::Dot(Vector(a), Vector(b)) / (norms_[a] * norms_[b]);
}

}  // namespace treeconv
