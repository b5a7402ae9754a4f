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

#include "zebra/reasoning.hpp"

#include <algorithm>
#include <cctype>

#include "zebra/prompt.hpp"
#include "zebra/text.hpp"

namespace zebra {

std::string_view mode_name(AnswerMode m) {
  switch (m) {
    case AnswerMode::zero_shot: return "zero_shot";
    case AnswerMode::zebra: return "zebra";
    case AnswerMode::oracle: return "oracle";
  }
  return "zero_shot";
}

AnswerMode mode_from_name(std::string_view name) {
  if (name == "zero_shot") return AnswerMode::zero_shot;
  if (name == "zebra") return AnswerMode::zebra;
  if (name == "oracle") return AnswerMode::oracle;
  throw ValidationError("unknown mode \"" + std::string(name) +
                        "\" (expected zero_shot, zebra or oracle)");
}

namespace {

std::string qa_system(const QueryView& q, bool with_explanations) {
  const auto labels = choice_labels(q.choices);
  const std::string count = std::to_string(q.choices.size());
  std::string s = "You are a helpful assistant for question answering.\n";
  if (with_explanations) {
    s += "You are given a question, " + count + " choices (labeled " + render_label_list(labels) +
         ") and a list of explanations.\n";
    s += "Your task is to choose the label corresponding to the best answer for the question "
         "based on the given explanations.\n";
  } else {
    s += "You are given a question and " + count + " choices (labeled " +
         render_label_list(labels) + ").\n";
    s += "Your task is to choose the label corresponding to the best answer for the question.\n";
  }
  s += "Do you understand the task?";
  return s;
}

bool is_word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

}  // namespace

ChatPrompt build_qa_prompt(const QueryView& q) {
  return {
      {Role::system, qa_system(q, false)},
      {Role::assistant, std::string(kAcknowledgement)},
      {Role::user, render_question_block(q.question, q.choices)},
      {Role::assistant, std::string(kAnswerCue)},
  };
}

ChatPrompt build_ir_prompt(const QueryView& q, const KnowledgeList& knowledge) {
  if (knowledge.empty())
    throw ValidationError("empty knowledge: use the zero-shot prompt (build_qa_prompt)");
  std::string user = render_question_block(q.question, q.choices);
  user += "\nExplanations";
  for (const auto& k : knowledge) {
    user += '\n';
    user += k;
  }
  return {
      {Role::system, qa_system(q, true)},
      {Role::assistant, std::string(kAcknowledgement)},
      {Role::user, std::move(user)},
      {Role::assistant, std::string(kAnswerCue)},
  };
}

bool ChoiceScores::confident() const {
  return std::any_of(logprobs.begin(), logprobs.end(),
                     [](const auto& p) { return p.second > kMissingLogprob; });
}

ChoiceScores score_choices(ChatGateway& gateway, const ChatPrompt& prompt,
                           const std::vector<std::string>& labels) {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] != label_for_index(i))
      throw ValidationError("labels must be consecutive from A");

  ChoiceScores scores;
  ChatRequest req;
  req.messages = prompt;
  req.temperature = 0.0;
  req.max_new_tokens = 1;
  req.want_label_logprobs = true;
  req.candidate_labels = labels;
  try {
    auto resp = gateway.chat(req);
    const auto& lp = resp.label_logprobs;
    for (const auto& l : labels) {
      double v = kMissingLogprob;
      if (lp) {
        if (auto it = lp->find(l); it != lp->end()) v = it->second;
      }
      scores.logprobs.emplace_back(l, v);
    }
    return scores;
  } catch (const LogprobsUnsupported&) {
  }

  ChatRequest greedy;
  greedy.messages = prompt;
  greedy.temperature = 0.0;
  greedy.max_new_tokens = 8;
  auto resp = gateway.chat(greedy);
  scores.fallback_scored = true;
  std::string found;
  const std::string& t = resp.text;
  for (std::size_t i = 0; i < t.size() && found.empty(); ++i) {
    if (t[i] < 'A' || t[i] > 'Z') continue;
    bool standalone = (i == 0 || !is_word_char(t[i - 1])) &&
                      (i + 1 == t.size() || !is_word_char(t[i + 1]));
    std::string cand(1, t[i]);
    if (standalone && std::find(labels.begin(), labels.end(), cand) != labels.end()) found = cand;
  }
  for (const auto& l : labels) scores.logprobs.emplace_back(l, l == found ? 0.0 : kMissingLogprob);
  return scores;
}

AnswerPrediction select_answer(const ChoiceScores& scores, const QueryView& q,
                               KnowledgeList knowledge, AnswerMode mode) {
  if (scores.logprobs.size() != q.choices.size())
    throw ValidationError("scores do not cover the query's choices");
  for (std::size_t i = 0; i < q.choices.size(); ++i)
    if (scores.logprobs[i].first != q.choices[i].label)
      throw ValidationError("score label \"" + scores.logprobs[i].first + "\" does not match choice " +
                            q.choices[i].label);
  AnswerPrediction p;
  p.scores = scores;
  p.knowledge = std::move(knowledge);
  p.mode = mode;
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.logprobs.size(); ++i)
    if (scores.logprobs[i].second > scores.logprobs[best].second) best = i;
  p.chosen_label = scores.logprobs[best].first;
  if (scores.fallback_scored) p.flags.push_back("fallback_scored");
  if (!scores.confident()) {
    p.chosen_label = "A";
    p.flags.push_back("unconfident");
  }
  return p;
}

}  // namespace zebra
