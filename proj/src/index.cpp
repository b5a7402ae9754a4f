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

#include "zebra/index.hpp"

#include <algorithm>
#include <numeric>

#include "zebra/kernels.hpp"

namespace zebra {

std::ptrdiff_t ExampleIndex::position(std::string_view id) const {
  auto it = pos_.find(std::string(id));
  return it == pos_.end() ? -1 : static_cast<std::ptrdiff_t>(it->second);
}

ExampleIndex build_index(std::vector<std::string> ids, std::span<const EmbeddingVector> vectors) {
  if (ids.size() != vectors.size())
    throw DimensionError("build_index: " + std::to_string(ids.size()) + " ids but " +
                         std::to_string(vectors.size()) + " vectors");
  if (ids.empty()) throw ValidationError("build_index: empty index");
  ExampleIndex index;
  index.dim_ = vectors.front().dim();
  index.matrix_.reserve(index.dim_ * vectors.size());
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].dim() != index.dim_)
      throw DimensionError("build_index: vector at position " + std::to_string(i) + " has dim " +
                           std::to_string(vectors[i].dim()) + ", expected " +
                           std::to_string(index.dim_));
    if (!index.pos_.emplace(ids[i], i).second)
      throw ValidationError("build_index: duplicate id \"" + ids[i] + "\"");
    auto v = vectors[i].values();
    index.matrix_.insert(index.matrix_.end(), v.begin(), v.end());
  }
  index.ids_ = std::move(ids);
  return index;
}

ExampleIndex build_index(std::span<const IdVector> rows) {
  std::vector<std::string> ids;
  std::vector<EmbeddingVector> vectors;
  for (const auto& r : rows) {
    ids.push_back(r.id);
    vectors.push_back(r.vector);
  }
  return build_index(std::move(ids), vectors);
}

std::vector<RetrievalHit> search(const ExampleIndex& index, const EmbeddingVector& query,
                                 std::size_t k, const IdSet& exclude) {
  if (query.dim() != index.dim())
    throw DimensionError("search: query dim " + std::to_string(query.dim()) + " vs index dim " +
                         std::to_string(index.dim()));
  if (k == 0) throw ValidationError("search: k must be positive");

  std::vector<double> scores(index.size());
  kernels::dot_scores_omp(index.matrix(), index.dim(), query.values(), scores);

  std::vector<std::size_t> candidates;
  candidates.reserve(index.size());
  for (std::size_t i = 0; i < index.size(); ++i)
    if (!exclude.contains(index.ids()[i])) candidates.push_back(i);

  auto better = [&](std::size_t a, std::size_t b) {
    return scores[a] != scores[b] ? scores[a] > scores[b] : a < b;
  };
  const std::size_t take = std::min(k, candidates.size());
  std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(take),
                    candidates.end(), better);

  std::vector<RetrievalHit> hits;
  hits.reserve(take);
  for (std::size_t i = 0; i < take; ++i)
    hits.push_back({index.ids()[candidates[i]], scores[candidates[i]]});
  return hits;
}

std::vector<IdVector> embed_examples(EmbeddingProvider& provider, const ExampleSet& set) {
  std::vector<std::string> texts;
  texts.reserve(set.size());
  for (const auto& ex : set) texts.push_back(serialize_example(ex));
  auto vectors = embed_texts(provider, texts);
  std::vector<IdVector> rows;
  rows.reserve(set.size());
  for (std::size_t i = 0; i < set.size(); ++i) rows.push_back({set[i].id, std::move(vectors[i])});
  return rows;
}

ExampleIndex index_examples(EmbeddingProvider& provider, const ExampleSet& set) {
  std::vector<std::string> ids, texts;
  for (const auto& ex : set) {
    ids.push_back(ex.id);
    texts.push_back(serialize_example(ex));
  }
  auto vectors = embed_texts(provider, texts);
  return build_index(std::move(ids), vectors);
}

}  // namespace zebra
