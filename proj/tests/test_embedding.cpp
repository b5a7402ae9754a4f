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

#include <gtest/gtest.h>

#include <sstream>

#include "support.hpp"
#include "zebra/embedding.hpp"
#include "zebra/http.hpp"

namespace zebra {
namespace {

TEST(Embedding, RejectsEmptyAndNonFinite) {
  EXPECT_THROW(EmbeddingVector(std::vector<double>{}), DimensionError);
  EXPECT_THROW(EmbeddingVector(std::vector<double>{1.0, NAN}), DimensionError);
}

TEST(Embedding, HashProviderDeterministic) {
  HashEmbeddingProvider p(16, 3);
  std::vector<std::string> texts{"same", "same"};
  auto v = embed_texts(p, texts);
  EXPECT_EQ(v[0], v[1]);
  HashEmbeddingProvider again(16, 3);
  EXPECT_EQ(embed_texts(again, texts)[0], v[0]);
}

TEST(Embedding, HashProviderDistinctTexts) {
  HashEmbeddingProvider p(8, 0);
  std::vector<std::string> texts{"alpha", "beta"};
  auto v = embed_texts(p, texts);
  bool differ = false;
  for (std::size_t i = 0; i < 8; ++i) differ |= v[0][i] != v[1][i];
  EXPECT_TRUE(differ);
  for (std::size_t i = 0; i < 8; ++i) {
    EXPECT_GE(v[0][i], -1.0);
    EXPECT_LE(v[0][i], 1.0);
  }
}

TEST(Embedding, EmptyBatch) {
  HashEmbeddingProvider p(4, 0);
  try {
    embed_texts(p, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "empty batch");
  }
}

class WrongDimProvider final : public EmbeddingProvider {
 public:
  std::string name() const override { return "wrong"; }
  std::size_t dim() const override { return 3; }
  std::vector<EmbeddingVector> embed(std::span<const std::string> texts) override {
    std::vector<EmbeddingVector> out;
    for (std::size_t i = 0; i < texts.size(); ++i)
      out.emplace_back(std::vector<double>(i == 1 ? 4 : 3, 1.0));
    return out;
  }
};

TEST(Embedding, DimensionMismatchInBatch) {
  WrongDimProvider p;
  std::vector<std::string> texts{"a", "b"};
  EXPECT_THROW(embed_texts(p, texts), DimensionError);
}

TEST(Embedding, VectorsRoundTrip) {
  std::vector<IdVector> rows{{"a", EmbeddingVector({1.5, -2.0})},
                             {"b", EmbeddingVector({0.1, 1e-12})}};
  std::ostringstream out;
  write_vectors(out, rows);
  std::istringstream in(out.str());
  auto back = read_vectors(in, "mem");
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].id, "a");
  EXPECT_EQ(back[1].vector, rows[1].vector);
}

TEST(Embedding, VectorsRejectRagged) {
  std::istringstream in("{\"id\":\"a\",\"vector\":[1,2]}\n{\"id\":\"b\",\"vector\":[1]}\n");
  try {
    read_vectors(in, "v");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("v:2:"), std::string::npos);
  }
}

// Serves /embeddings requests by hashing inputs; records call count.
class FakeEmbeddingTransport final : public HttpTransport {
 public:
  HttpResponse post_json(const std::string& url, const std::string& body,
                         const HttpHeaders&) override {
    ++calls;
    EXPECT_NE(url.find("/embeddings"), std::string::npos);
    auto j = nlohmann::json::parse(body);
    nlohmann::json resp;
    resp["data"] = nlohmann::json::array();
    HashEmbeddingProvider h(4, 9);
    std::vector<std::string> in = j["input"].get<std::vector<std::string>>();
    auto v = h.embed(in);
    // Reverse order with explicit indices: the client must reorder.
    for (std::size_t i = in.size(); i-- > 0;) {
      resp["data"].push_back({{"index", i},
                              {"embedding", std::vector<double>(v[i].values().begin(),
                                                                v[i].values().end())}});
    }
    return {200, resp.dump()};
  }
  std::atomic<int> calls{0};
};

TEST(Embedding, RemoteProviderPreservesOrderAcrossChunks) {
  auto t = std::make_shared<FakeEmbeddingTransport>();
  RemoteEmbeddingConfig cfg{"fake", "http://x/v1", "m", "NOPE_KEY", 4, 3, 4};
  RemoteEmbeddingProvider p(cfg, t);
  std::vector<std::string> texts;
  for (int i = 0; i < 10; ++i) texts.push_back("text " + std::to_string(i));
  auto got = embed_texts(p, texts);
  HashEmbeddingProvider h(4, 9);
  auto want = h.embed(texts);
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_EQ(got[i], want[i]) << i;
  EXPECT_EQ(t->calls.load(), 4);
}

}  // namespace
}  // namespace zebra
