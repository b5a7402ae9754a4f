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
#include "zebra/prompt.hpp"
#include "zebra/reasoning.hpp"

namespace zebra {
namespace {

QueryView q5() { return as_query(testing::golden_query_5()); }
QueryView q2() { return as_query(testing::golden_query_2()); }

TEST(QaPrompt, FiveChoiceWording) {
  auto p = build_qa_prompt(q5());
  ASSERT_EQ(p.size(), 4u);
  EXPECT_NE(p[0].content.find("5 choices (labeled A, B, C, D and E)"), std::string::npos);
  EXPECT_EQ(p[3].content, "Answer:");
}

TEST(QaPrompt, TwoChoice) {
  auto p = build_qa_prompt(q2());
  EXPECT_NE(p[0].content.find("2 choices (labeled A and B)"), std::string::npos);
  auto lines = std::count(p[2].content.begin(), p[2].content.end(), '\n');
  EXPECT_EQ(lines, 4);  // Question:, text, Choices:, A., B.
  EXPECT_NE(p[2].content.find("\nA. store it"), std::string::npos);
  EXPECT_NE(p[2].content.find("\nB. leave it"), std::string::npos);
}

TEST(IrPrompt, KnowledgeBetweenHeaderAndCue) {
  KnowledgeList k{"first fact", "second fact"};
  auto p = build_ir_prompt(q5(), k);
  const auto& user = p[2].content;
  auto header = user.find("\nExplanations\n");
  ASSERT_NE(header, std::string::npos);
  EXPECT_NE(user.find("first fact", header), std::string::npos);
  EXPECT_NE(user.find("second fact", header), std::string::npos);
  EXPECT_EQ(p.back().content, "Answer:");
}

TEST(IrPrompt, OrderSensitiveAndDiffersOnlyInBlock) {
  auto a = build_ir_prompt(q5(), {"x", "y"});
  auto b = build_ir_prompt(q5(), {"y", "x"});
  EXPECT_NE(render_prompt_text(a), render_prompt_text(b));
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    if (i != 2) EXPECT_EQ(a[i], b[i]);
  auto qa = build_qa_prompt(q5());
  EXPECT_EQ(a[2].content.substr(0, qa[2].content.size()), qa[2].content);
}

TEST(IrPrompt, EmptyKnowledgeRejected) {
  EXPECT_THROW(build_ir_prompt(q5(), {}), ValidationError);
}

MockGateway scripted(std::vector<std::pair<std::string, double>> top) {
  return MockGateway({{MockRule::Match::contains, "", "", std::move(top)}}, 0);
}

TEST(Score, PassThrough) {
  auto g = scripted({{"A", -0.1}, {"B", -2.3}, {"C", -1.0}, {"D", -5}, {"E", -4}});
  auto s = score_choices(g, build_qa_prompt(q5()), {"A", "B", "C", "D", "E"});
  std::vector<std::pair<std::string, double>> want{
      {"A", -0.1}, {"B", -2.3}, {"C", -1.0}, {"D", -5}, {"E", -4}};
  EXPECT_EQ(s.logprobs, want);
  EXPECT_FALSE(s.fallback_scored);
  EXPECT_EQ(select_answer(s, q5(), {}, AnswerMode::zero_shot).chosen_label, "A");
}

TEST(Score, SentinelForMissingLabel) {
  auto g = scripted({{"B", -0.3}});
  auto s = score_choices(g, build_qa_prompt(q2()), {"A", "B"});
  EXPECT_EQ(s.logprobs[0].second, kMissingLogprob);
  EXPECT_EQ(s.logprobs[1].second, -0.3);
}

TEST(Score, RequestShape) {
  struct Spy final : ChatGateway {
    ChatRequest last;
    ChatResponse chat(const ChatRequest& r) override {
      last = r;
      return {"A", std::map<std::string, double>{{"A", -1}, {"B", -2}}, "spy"};
    }
    std::string model_name() const override { return "spy"; }
  } spy;
  score_choices(spy, build_qa_prompt(q2()), {"A", "B"});
  EXPECT_TRUE(spy.last.want_label_logprobs);
  EXPECT_EQ(spy.last.candidate_labels, (std::vector<std::string>{"A", "B"}));
  EXPECT_EQ(spy.last.temperature, 0.0);
  EXPECT_EQ(spy.last.max_new_tokens, 1);
}

TEST(Score, FallbackWithoutLogprobs) {
  MockGateway g({{MockRule::Match::contains, "", "Answer: C", std::nullopt}}, 0, "m", false);
  auto s = score_choices(g, build_qa_prompt(q5()), {"A", "B", "C", "D", "E"});
  EXPECT_TRUE(s.fallback_scored);
  for (const auto& [l, v] : s.logprobs) EXPECT_EQ(v, l == "C" ? 0.0 : kMissingLogprob) << l;
  auto p = select_answer(s, q5(), {}, AnswerMode::zero_shot);
  EXPECT_EQ(p.chosen_label, "C");
  EXPECT_EQ(p.flags, (std::vector<std::string>{"fallback_scored"}));
}

TEST(Score, FallbackNoLabelIsUnconfident) {
  MockGateway g({{MockRule::Match::contains, "", "I am not sure.", std::nullopt}}, 0, "m", false);
  auto s = score_choices(g, build_qa_prompt(q2()), {"A", "B"});
  EXPECT_FALSE(s.confident());
  auto p = select_answer(s, q2(), {}, AnswerMode::zero_shot);
  EXPECT_EQ(p.chosen_label, "A");
  EXPECT_EQ(p.flags, (std::vector<std::string>{"fallback_scored", "unconfident"}));
}

ChoiceScores two(double a, double b) { return {{{"A", a}, {"B", b}}, false}; }

TEST(Select, Argmax) {
  EXPECT_EQ(select_answer(two(-0.1, -2.0), q2(), {}, AnswerMode::zero_shot).chosen_label, "A");
  EXPECT_EQ(select_answer(two(-3.0, -2.0), q2(), {}, AnswerMode::zero_shot).chosen_label, "B");
}

TEST(Select, TieGoesToEarliest) {
  EXPECT_EQ(select_answer(two(-1.0, -1.0), q2(), {}, AnswerMode::zero_shot).chosen_label, "A");
}

TEST(Select, RecordsModeAndKnowledge) {
  auto p = select_answer(two(-1.0, -0.5), q2(), {"k"}, AnswerMode::oracle);
  EXPECT_EQ(p.mode, AnswerMode::oracle);
  EXPECT_EQ(p.knowledge, (KnowledgeList{"k"}));
  EXPECT_TRUE(p.flags.empty());
}

TEST(Select, ScoresMustCoverQuery) {
  EXPECT_THROW(select_answer(two(-1, -2), q5(), {}, AnswerMode::zero_shot), ValidationError);
  ChoiceScores swapped{{{"B", -1.0}, {"A", -2.0}}, false};
  EXPECT_THROW(select_answer(swapped, q2(), {}, AnswerMode::zero_shot), ValidationError);
}

TEST(Select, ShiftInvariance) {
  std::mt19937_64 gen(77);
  std::uniform_real_distribution<double> lp(-10.0, 0.0), shift(-100.0, 100.0);
  auto q = q5();
  for (int t = 0; t < 1000; ++t) {
    ChoiceScores s;
    for (const auto& c : q.choices) s.logprobs.emplace_back(c.label, lp(gen));
    if (t % 7 == 0) s.logprobs[3].second = s.logprobs[1].second;  // force some ties
    const double c = shift(gen);
    ChoiceScores shifted = s;
    for (auto& [l, v] : shifted.logprobs) v += c;
    EXPECT_EQ(select_answer(s, q, {}, AnswerMode::zebra).chosen_label,
              select_answer(shifted, q, {}, AnswerMode::zebra).chosen_label);
  }
}

TEST(Mode, Names) {
  EXPECT_EQ(mode_from_name("zebra"), AnswerMode::zebra);
  EXPECT_EQ(mode_name(AnswerMode::zero_shot), "zero_shot");
  EXPECT_THROW(mode_from_name("few_shot"), ValidationError);
}

}  // namespace
}  // namespace zebra
