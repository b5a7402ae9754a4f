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

#include <string>
#include <utility>
#include <vector>

#include "zebra/kb.hpp"
#include "zebra/knowledge.hpp"
#include "zebra/llm.hpp"

namespace zebra {

enum class AnswerMode { zero_shot, zebra, oracle };

std::string_view mode_name(AnswerMode m);
AnswerMode mode_from_name(std::string_view name);

inline constexpr std::string_view kAnswerCue = "Answer:";

/// Plain multiple-choice prompt.
ChatPrompt build_qa_prompt(const QueryView& q);

/// Multiple-choice prompt with an explanations block. Empty knowledge is a
/// ValidationError; callers route it to build_qa_prompt.
ChatPrompt build_ir_prompt(const QueryView& q, const KnowledgeList& knowledge);

struct ChoiceScores {
  /// (label, log-probability) in choice order; kMissingLogprob when unknown.
  std::vector<std::pair<std::string, double>> logprobs;
  /// Scores came from a greedy generation instead of label logprobs.
  bool fallback_scored = false;

  bool confident() const;
};

/// One label-logprob request (temperature 0, one new token). If the gateway
/// cannot return logprobs, falls back to a short greedy generation and gives
/// log-probability 0 to the first standalone label in the text.
ChoiceScores score_choices(ChatGateway& gateway, const ChatPrompt& prompt,
                           const std::vector<std::string>& labels);

struct AnswerPrediction {
  std::string chosen_label;
  ChoiceScores scores;
  KnowledgeList knowledge;
  AnswerMode mode = AnswerMode::zero_shot;
  std::vector<std::string> flags;
};

/// Argmax over the label scores; ties go to the earliest label. Without any
/// real score the answer defaults to "A" and is flagged "unconfident".
AnswerPrediction select_answer(const ChoiceScores& scores, const QueryView& q,
                               KnowledgeList knowledge, AnswerMode mode);

}  // namespace zebra
