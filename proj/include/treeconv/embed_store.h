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

#ifndef TREECONV_EMBED_STORE_H_
#define TREECONV_EMBED_STORE_H_

// Word-vector table with exact top-k cosine neighbor queries.
//
// Text format: an optional "<count> <dim>" header line, then one row per
// word: the word, a space, and `dim` space-separated decimal floats. The
// same format carries GloVe-style dumps and mean-pooled contextual vectors.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "treeconv/pair_index.h"

namespace treeconv {

struct Neighbor {
  std::string word;
  double similarity = 0.0;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

inline constexpr std::size_t kDefaultNeighbors = 10;

class VectorStore {
 public:
  VectorStore() = default;

  // Throws DimensionMismatch or MalformedRow. Duplicate words (after
  // normalization) keep their first row; duplicates and zero vectors are
  // reported in warnings().
  static VectorStore Load(std::string_view text, const NormalizationPolicy& policy = {});
  static VectorStore LoadFile(const std::string& path,
                              const NormalizationPolicy& policy = {});

  // Builds a store from in-memory rows; same duplicate rules as Load.
  static VectorStore FromRows(std::size_t dim,
                              const std::vector<std::pair<std::string, std::vector<float>>>& rows,
                              const NormalizationPolicy& policy = {});

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return vocab_.size(); }
  bool empty() const { return vocab_.empty(); }
  const std::vector<std::string>& vocab() const { return vocab_; }
  const std::vector<double>& norms() const { return norms_; }
  const std::vector<std::string>& warnings() const { return warnings_; }
  const std::vector<std::string>& zero_vectors() const { return zero_vectors_; }
  const NormalizationPolicy& policy() const { return policy_; }

  // `word` is normalized before lookup.
  std::optional<std::size_t> IndexOf(std::string_view word) const;
  std::span<const float> Vector(std::size_t row) const {
    return std::span<const float>(values_).subspan(row * dim_, dim_);
  }

  // Up to min(k, size() - 1) neighbors, most similar first, ties in
  // vocabulary order. No similarity threshold. Empty for out-of-vocabulary
  // and zero-norm query words.
  std::vector<Neighbor> TopK(std::string_view word, std::size_t k = kDefaultNeighbors) const;
  // Single-threaded reference with identical results.
  std::vector<Neighbor> TopKSerial(std::string_view word,
                                   std::size_t k = kDefaultNeighbors) const;

  // Cosine of two vocabulary rows; 0 if either has zero norm.
  double Similarity(std::size_t a, std::size_t b) const;

 private:
  void Append(std::string word, std::span<const float> values, std::size_t line);

  std::size_t dim_ = 0;
  NormalizationPolicy policy_;
  std::vector<std::string> vocab_;
  std::vector<float> values_;  // row-major, size() * dim()
  std::vector<double> norms_;
  std::unordered_map<std::string, std::size_t> rows_;
  std::vector<std::string> warnings_;
  std::vector<std::string> zero_vectors_;
};

}  // namespace treeconv

#endif  // TREECONV_EMBED_STORE_H_
