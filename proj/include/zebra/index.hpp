// Copyright 2026 The zebra-qa Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "zebra/embedding.hpp"
#include "zebra/kb.hpp"

namespace zebra {

struct RetrievalHit {
  std::string example_id;
  double score = 0.0;

  bool operator==(const RetrievalHit&) const = default;
};

using IdSet = std::unordered_set<std::string>;

/// Immutable brute-force dot-product index. Rows keep insertion order.
class ExampleIndex {
 public:
  std::size_t size() const { return ids_.size(); }
  std::size_t dim() const { return dim_; }
  const std::vector<std::string>& ids() const { return ids_; }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(matrix_).subspan(i * dim_, dim_);
  }
  std::span<const double> matrix() const { return matrix_; }
  /// Row position of `id`, or -1.
  std::ptrdiff_t position(std::string_view id) const;

 private:
  friend ExampleIndex build_index(std::vector<std::string> ids,
                                  std::span<const EmbeddingVector> vectors);
  std::vector<std::string> ids_;
  std::vector<double> matrix_;
  std::size_t dim_ = 0;
  std::unordered_map<std::string, std::size_t> pos_;
};

/// Throws on length mismatch, mixed dims (naming the position) or a
/// duplicate id.
ExampleIndex build_index(std::vector<std::string> ids, std::span<const EmbeddingVector> vectors);
ExampleIndex build_index(std::span<const IdVector> rows);

/// Exact top-k by dot product, descending; ties go to the earlier row.
/// Ids in `exclude` are skipped.
std::vector<RetrievalHit> search(const ExampleIndex& index, const EmbeddingVector& query,
                                 std::size_t k, const IdSet& exclude = {});

/// Embeds every example's serialized passage and indexes it.
/// One vector per example, embedding its serialized form, in set order.
std::vector<IdVector> embed_examples(EmbeddingProvider& provider, const ExampleSet& set);

ExampleIndex index_examples(EmbeddingProvider& provider, const ExampleSet& set);

}  // namespace zebra
