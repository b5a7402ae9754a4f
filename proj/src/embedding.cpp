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

#include "zebra/embedding.hpp"

#include <cmath>
#include <fstream>

#include "json.hpp"
#include "zebra/adapter.hpp"
#include "zebra/http.hpp"
#include "zebra/parallel.hpp"
#include "zebra/text.hpp"

namespace zebra {

using json = nlohmann::json;

EmbeddingVector::EmbeddingVector(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw DimensionError("embedding vector must have positive dimension");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i]))
      throw DimensionError("non-finite embedding entry at index " + std::to_string(i));
  }
}

double dot(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.dim() != b.dim())
    throw DimensionError("dot of dims " + std::to_string(a.dim()) + " and " +
                         std::to_string(b.dim()));
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

std::vector<EmbeddingVector> embed_texts(EmbeddingProvider& provider,
                                         std::span<const std::string> texts) {
  if (texts.empty()) throw Error("empty batch");
  auto out = provider.embed(texts);
  if (out.size() != texts.size())
    throw Error("provider " + provider.name() + " returned " + std::to_string(out.size()) +
                " vectors for " + std::to_string(texts.size()) + " texts");
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i].dim() != provider.dim())
      throw DimensionError("provider " + provider.name() + " returned dim " +
                           std::to_string(out[i].dim()) + " at position " + std::to_string(i) +
                           ", expected " + std::to_string(provider.dim()));
  }
  return out;
}

HashEmbeddingProvider::HashEmbeddingProvider(std::size_t dim, std::uint64_t seed)
    : dim_(dim), seed_(seed) {
  if (dim == 0) throw DimensionError("hash provider needs dim > 0");
}

std::vector<EmbeddingVector> HashEmbeddingProvider::embed(std::span<const std::string> texts) {
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (const auto& t : texts) {
    std::uint64_t h = fnv1a64(t, seed_);
    std::vector<double> v(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      std::uint64_t bits = splitmix64(h + i);
      v[i] = static_cast<double>(bits >> 11) * 0x1.0p-53 * 2.0 - 1.0;
    }
    out.emplace_back(std::move(v));
  }
  return out;
}

TableEmbeddingProvider::TableEmbeddingProvider(std::string name, std::size_t dim)
    : name_(std::move(name)), dim_(dim) {}

void TableEmbeddingProvider::insert(std::string text, EmbeddingVector v) {
  if (v.dim() != dim_)
    throw DimensionError("table provider " + name_ + " expects dim " + std::to_string(dim_));
  table_.insert_or_assign(std::move(text), std::move(v));
}

std::vector<EmbeddingVector> TableEmbeddingProvider::embed(std::span<const std::string> texts) {
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (const auto& t : texts) {
    auto it = table_.find(t);
    if (it == table_.end()) throw Error("no precomputed vector for text: " + t);
    out.push_back(it->second);
  }
  return out;
}

RemoteEmbeddingProvider::RemoteEmbeddingProvider(RemoteEmbeddingConfig cfg,
                                                 std::shared_ptr<HttpTransport> transport)
    : cfg_(std::move(cfg)), transport_(std::move(transport)) {
  if (cfg_.dim == 0) throw DimensionError("remote provider " + cfg_.name + " needs a declared dim");
  if (cfg_.batch_size == 0) cfg_.batch_size = 1;
  if (cfg_.max_in_flight == 0) cfg_.max_in_flight = 1;
}

std::vector<EmbeddingVector> RemoteEmbeddingProvider::embed_chunk(
    std::span<const std::string> texts) {
  json body = {{"model", cfg_.model}, {"input", json::array()}};
  for (const auto& t : texts) body["input"].push_back(t);
  HttpHeaders headers;
  if (auto key = api_key_from_env(cfg_.api_key_env); !key.empty())
    headers.emplace_back("Authorization", "Bearer " + key);
  auto res = transport_->post_json(cfg_.base_url + "/embeddings", body.dump(), headers);
  if (res.status != 200)
    throw Error("embedding endpoint " + cfg_.name + " returned HTTP " +
                std::to_string(res.status) + ": " + res.body.substr(0, 300));
  json j = json::parse(res.body, nullptr, false);
  if (j.is_discarded() || !j.contains("data") || !j["data"].is_array() ||
      j["data"].size() != texts.size())
    throw Error("malformed embedding response from " + cfg_.name);
  std::vector<EmbeddingVector> out(texts.size());
  for (std::size_t i = 0; i < j["data"].size(); ++i) {
    const auto& item = j["data"][i];
    std::size_t pos = item.value("index", i);
    if (pos >= texts.size()) throw Error("embedding response index out of range");
    out[pos] = EmbeddingVector(item.at("embedding").get<std::vector<double>>());
  }
  return out;
}

std::vector<EmbeddingVector> RemoteEmbeddingProvider::embed(std::span<const std::string> texts) {
  std::size_t n_chunks = (texts.size() + cfg_.batch_size - 1) / cfg_.batch_size;
  std::vector<std::vector<EmbeddingVector>> parts(n_chunks);
  for_each_index(n_chunks, cfg_.max_in_flight, [&](std::size_t c) {
    auto begin = c * cfg_.batch_size;
    auto len = std::min(cfg_.batch_size, texts.size() - begin);
    parts[c] = embed_chunk(texts.subspan(begin, len));
  });

  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (auto& p : parts)
    for (auto& v : p) out.push_back(std::move(v));
  return out;
}

AdaptedEmbeddingProvider::AdaptedEmbeddingProvider(std::shared_ptr<EmbeddingProvider> base,
                                                   std::shared_ptr<const AdapterWeights> adapter)
    : base_(std::move(base)), adapter_(std::move(adapter)) {
  if (base_->dim() != adapter_->d_in)
    throw DimensionError("adapter d_in " + std::to_string(adapter_->d_in) +
                         " does not match provider dim " + std::to_string(base_->dim()));
}

std::string AdaptedEmbeddingProvider::name() const { return base_->name() + "+adapter"; }
std::size_t AdaptedEmbeddingProvider::dim() const { return adapter_->d_out; }

std::vector<EmbeddingVector> AdaptedEmbeddingProvider::embed(std::span<const std::string> texts) {
  auto base = embed_texts(*base_, texts);
  std::vector<EmbeddingVector> out;
  out.reserve(base.size());
  for (const auto& v : base) out.push_back(adapter_->apply(v));
  return out;
}

std::vector<IdVector> read_vectors(std::istream& in, const std::string& source_name) {
  std::vector<IdVector> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto where = source_name + ":" + std::to_string(line_no) + ": ";
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw ParseError(where + "malformed JSON");
    if (!j.contains("id") || !j["id"].is_string()) throw ParseError(where + "missing string \"id\"");
    if (!j.contains("vector") || !j["vector"].is_array())
      throw ParseError(where + "missing array \"vector\"");
    std::vector<double> values;
    for (const auto& x : j["vector"]) {
      if (!x.is_number()) throw ParseError(where + "non-numeric vector entry");
      values.push_back(x.get<double>());
    }
    try {
      rows.push_back({j["id"].get<std::string>(), EmbeddingVector(std::move(values))});
    } catch (const DimensionError& e) {
      throw ParseError(where + e.what());
    }
    if (rows.back().vector.dim() != rows.front().vector.dim())
      throw ParseError(where + "vector length " + std::to_string(rows.back().vector.dim()) +
                       " differs from " + std::to_string(rows.front().vector.dim()));
  }
  return rows;
}

std::vector<IdVector> load_vectors(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return read_vectors(in, path.string());
}

void write_vectors(std::ostream& out, std::span<const IdVector> rows) {
  for (const auto& r : rows) {
    json j;
    j["id"] = r.id;
    j["vector"] = std::vector<double>(r.vector.values().begin(), r.vector.values().end());
    out << j.dump() << '\n';
  }
}

void write_vectors(const std::filesystem::path& path, std::span<const IdVector> rows) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  write_vectors(out, rows);
}

}  // namespace zebra
