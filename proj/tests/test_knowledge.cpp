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

#include "support.hpp"
#include "zebra/knowledge.hpp"
#include "zebra/prompt.hpp"

namespace zebra {
namespace {

using testing::make_example;

QueryView five_choice_query() { return as_query(testing::golden_query_5()); }

TEST(KgPrompt, OneExampleSixMessages) {
  std::vector<Example> ex{make_example("x", "Q?", {"a", "b"}, "A", {"e1", "e2"})};
  auto p = build_kg_prompt(ex, five_choice_query());
  ASSERT_EQ(p.size(), 6u);
  EXPECT_EQ(p[0].role, Role::system);
  EXPECT_NE(p[0].content.find("You are given a question and 5 choices."), std::string::npos);
  EXPECT_EQ(p[1].role, Role::assistant);
  EXPECT_EQ(p[1].content, kAcknowledgement);
  EXPECT_EQ(p[2].content, "Question:\nQ?\nChoices:\nA. a\nB. b");
  EXPECT_EQ(p[3].content, "List of knowledge:\n1. e1\n2. e2");
  EXPECT_EQ(p[4].role, Role::user);
  EXPECT_EQ(p[5].role, Role::assistant);
  EXPECT_EQ(p[5].content, "List of knowledge:");
}

TEST(KgPrompt, NoExamples) {
  try {
    build_kg_prompt({}, five_choice_query());
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_STREQ(e.what(), "no examples");
  }
}

TEST(KgPrompt, ExampleWithoutExplanations) {
  std::vector<Example> ex{make_example("x", "Q?", {"a", "b"})};
  EXPECT_THROW(build_kg_prompt(ex, five_choice_query()), ValidationError);
}

TEST(KgPrompt, ExplanationCap) {
  std::vector<std::string> twelve;
  for (int i = 1; i <= 12; ++i) twelve.push_back("fact " + std::to_string(i));
  std::vector<Example> ex{make_example("x", "Q?", {"a", "b"}, "A", twelve)};
  auto p = build_kg_prompt(ex, five_choice_query());
  EXPECT_NE(p[3].content.find("10. fact 10"), std::string::npos);
  EXPECT_EQ(p[3].content.find("fact 11"), std::string::npos);
}

TEST(KgPrompt, TemplateNeedsCountSlot) {
  std::vector<Example> ex{make_example("x", "Q?", {"a", "b"}, "A", {"e"})};
  KgPromptConfig cfg;
  cfg.system_template = "no slot";
  EXPECT_THROW(build_kg_prompt(ex, five_choice_query(), cfg), ValidationError);
  cfg.system_template = "{num_choices} choices labeled {labels}";
  EXPECT_EQ(build_kg_prompt(ex, five_choice_query(), cfg)[0].content,
            "5 choices labeled A, B, C, D and E");
}

TEST(KgPrompt, DeterministicAndOnlyRetrievedContent) {
  auto kb = testing::golden_kb_examples();
  auto q = five_choice_query();
  auto a = render_prompt_text(build_kg_prompt(kb, q));
  EXPECT_EQ(a, render_prompt_text(build_kg_prompt(kb, q)));
  for (const auto& ex : kb) {
    EXPECT_NE(a.find(ex.question), std::string::npos);
    for (const auto& e : ex.explanations) EXPECT_NE(a.find(e), std::string::npos);
  }
}

TEST(ParseKnowledge, BulletsStripped) {
  auto k = parse_knowledge(
      "* Desk drawers are used for storing office supplies.\n* Pens are office supplies.", 10);
  EXPECT_EQ(k, (KnowledgeList{"Desk drawers are used for storing office supplies.",
                              "Pens are office supplies."}));
}

TEST(ParseKnowledge, EmptyText) { EXPECT_TRUE(parse_knowledge("", 10).empty()); }

TEST(ParseKnowledge, Dedup) {
  EXPECT_EQ(parse_knowledge("1. A\n1. A\n2. B", 10), (KnowledgeList{"A", "B"}));
}

TEST(ParseKnowledge, MarkersCueAndCap) {
  auto k = parse_knowledge(
      "List of knowledge:\n\xE2\x80\xA2 one\n- two\n3) three\n  4.  four  \n\nfive", 4);
  EXPECT_EQ(k, (KnowledgeList{"one", "two", "three", "four"}));
  // Numbers that are part of the sentence survive.
  EXPECT_EQ(parse_knowledge("3.5 liters is a lot", 10), (KnowledgeList{"3.5 liters is a lot"}));
}

TEST(ParseKnowledge, RoundTripRender) {
  KnowledgeList items{"Water boils at high heat.", "Ice is frozen water.", "Steam rises."};
  EXPECT_EQ(parse_knowledge(render_knowledge_numbered(items), 10), items);
}

struct KgFixture {
  ExampleSet kb{"kb"};
  std::optional<ExampleIndex> index;
  TableEmbeddingProvider provider{"table", 2};

  KgFixture() {
    kb.add(make_example("k1", "Where do fish live?", {"water", "sand"}, "A", {"Fish swim in water."}));
    kb.add(make_example("k2", "What melts ice?", {"heat", "cold"}, "A", {"Heat melts ice."}));
    kb.add(make_example("k3", "What do cows eat?", {"grass", "rocks"}, "A", {"Cows graze on grass."}));
    kb.add(make_example("q", "Where do whales live?", {"ocean", "desert"}, "A", {"Whales live in oceans."}));
    std::vector<EmbeddingVector> v{EmbeddingVector({1.0, 0.0}), EmbeddingVector({0.0, 1.0}),
                                   EmbeddingVector({0.5, 0.5}), EmbeddingVector({2.0, 0.0})};
    index = build_index({"k1", "k2", "k3", "q"}, v);
    provider.insert(serialize_query(as_query(kb.at("q"))), EmbeddingVector({1.0, 0.1}));
  }
};

TEST(GenerateKnowledge, ScriptedBulletsAndProvenance) {
  KgFixture f;
  MockGateway g({{MockRule::Match::contains, "Where do whales live?",
                  "* Whales are marine mammals.\n* Deserts have no water.", std::nullopt}},
                0);
  auto q = as_query(f.kb.at("q"));
  auto r = generate_knowledge(g, *f.index, f.provider, f.kb, q, 2);
  EXPECT_EQ(r.knowledge, (KnowledgeList{"Whales are marine mammals.", "Deserts have no water."}));
  ASSERT_EQ(r.hits.size(), 2u);
  EXPECT_EQ(r.hits[0].example_id, "k1");
  EXPECT_EQ(r.hits[1].example_id, "k3");
  EXPECT_FALSE(r.empty_generation);
  auto j = provenance_json("q", r);
  EXPECT_EQ(j["query_id"], "q");
  EXPECT_EQ(j["hits"].size(), 2u);
  EXPECT_EQ(j["knowledge"].size(), 2u);
}

TEST(GenerateKnowledge, LargeKExcludesSelf) {
  KgFixture f;
  MockGateway g({}, 0);
  auto r = generate_knowledge(g, *f.index, f.provider, f.kb, as_query(f.kb.at("q")), 50);
  ASSERT_EQ(r.hits.size(), 3u);
  for (const auto& h : r.hits) EXPECT_NE(h.example_id, "q");
}

TEST(GenerateKnowledge, EmptyGenerationFlagged) {
  KgFixture f;
  MockGateway g({{MockRule::Match::contains, "whales", "", std::nullopt}}, 0);
  auto r = generate_knowledge(g, *f.index, f.provider, f.kb, as_query(f.kb.at("q")), 1);
  EXPECT_TRUE(r.knowledge.empty());
  EXPECT_TRUE(r.empty_generation);
  EXPECT_EQ(provenance_json("q", r)["empty_generation"], true);
}

TEST(GenerateKnowledge, UsesConfiguredDecoding) {
  KgFixture f;
  struct Spy final : ChatGateway {
    ChatRequest last;
    ChatResponse chat(const ChatRequest& r) override {
      last = r;
      return {"1. x", std::nullopt, "spy"};
    }
    std::string model_name() const override { return "spy"; }
  } spy;
  generate_knowledge(spy, *f.index, f.provider, f.kb, as_query(f.kb.at("q")), 1);
  EXPECT_EQ(spy.last.temperature, 0.0);
  EXPECT_EQ(spy.last.max_new_tokens, 256);
  EXPECT_FALSE(spy.last.want_label_logprobs);
  EXPECT_EQ(spy.last.messages.size(), 6u);
}

}  // namespace
}  // namespace zebra
