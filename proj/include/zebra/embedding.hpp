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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "zebra/error.hpp"

namespace zebra {

class HttpTransport;
struct AdapterWeights;

/// Dense vector with every entry finite.
class EmbeddingVector {
 public:
  EmbeddingVector() = default;
  /// Throws DimensionError on an empty or non-finite vector.
  explicit EmbeddingVector(std::vector<double> values);

  std::size_t dim() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

  bool operator==(const EmbeddingVector&) const = default;

 private:
  std::vector<double> values_;
};

double dot(const EmbeddingVector& a, const EmbeddingVector& b);

/// Maps a batch of strings to same-dimension vectors, one per input, in
/// input order. One encoder serves both queries and passages.
class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual std::string name() const = 0;
  virtual std::size_t dim() const = 0;
  virtual std::vector<EmbeddingVector> embed(std::span<const std::string> texts) = 0;
};

/// Validating front door over a provider: rejects empty batches and checks
/// the result count and dimension.
std::vector<EmbeddingVector> embed_texts(EmbeddingProvider& provider,
                                         std::span<const std::string> texts);

/// Deterministic provider for tests and offline runs: each coordinate is a
/// seeded hash of the text mapped to [-1, 1]. No semantic content.
class HashEmbeddingProvider final : public EmbeddingProvider {
 public:
  HashEmbeddingProvider(std::size_t dim, std::uint64_t seed);
  std::string name() const override { return "hash"; }
  std::size_t dim() const override { return dim_; }
  std::vector<EmbeddingVector> embed(std::span<const std::string> texts) override;

 private:
  std::size_t dim_;
  std::uint64_t seed_;
};

/// Looks texts up in a precomputed table (e.g. vectors exported by an
/// external encoder). Unknown texts raise an Error.
class TableEmbeddingProvider final : public EmbeddingProvider {
 public:
  TableEmbeddingProvider(std::string name, std::size_t dim);
  void insert(std::string text, EmbeddingVector v);
  std::string name() const override { return name_; }
  std::size_t dim() const override { return dim_; }
  std::vector<EmbeddingVector> embed(std::span<const std::string> texts) override;

 private:
  std::string name_;
  std::size_t dim_;
  std::unordered_map<std::string, EmbeddingVector> table_;
};

struct RemoteEmbeddingConfig {
  std::string name;
  std::string base_url;  // e.g. https://api.openai.com/v1
  std::string model;
  std::string api_key_env;
  std::size_t dim = 0;
  std::size_t batch_size = 64;
  std::size_t max_in_flight = 4;
};

/// OpenAI-compatible `/embeddings` endpoint.
class RemoteEmbeddingProvider final : public EmbeddingProvider {
 public:
  RemoteEmbeddingProvider(RemoteEmbeddingConfig cfg, std::shared_ptr<HttpTransport> transport);
  std::string name() const override { return cfg_.name; }
  std::size_t dim() const override { return cfg_.dim; }
  std::vector<EmbeddingVector> embed(std::span<const std::string> texts) override;

 private:
  std::vector<EmbeddingVector> embed_chunk(std::span<const std::string> texts);

  RemoteEmbeddingConfig cfg_;
  std::shared_ptr<HttpTransport> transport_;
};

/// Applies a trained linear adapter on top of another provider.
class AdaptedEmbeddingProvider final : public EmbeddingProvider {
 public:
  AdaptedEmbeddingProvider(std::shared_ptr<EmbeddingProvider> base,
                           std::shared_ptr<const AdapterWeights> adapter);
  std::string name() const override;
  std::size_t dim() const override;
  std::vector<EmbeddingVector> embed(std::span<const std::string> texts) override;

 private:
  std::shared_ptr<EmbeddingProvider> base_;
  std::shared_ptr<const AdapterWeights> adapter_;
};

/// One `{"id": ..., "vector": [...]}` object per line.
struct IdVector {
  std::string id;
  EmbeddingVector vector;
};

std::vector<IdVector> read_vectors(std::istream& in, const std::string& source_name);
std::vector<IdVector> load_vectors(const std::filesystem::path& path);
void write_vectors(std::ostream& out, std::span<const IdVector> rows);
void write_vectors(const std::filesystem::path& path, std::span<const IdVector> rows);

}  // namespace zebra
