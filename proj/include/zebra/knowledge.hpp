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

// Example-guided knowledge generation: retrieved examples are replayed as a
// few-shot dialogue and the model writes explanations for the new question.

#pragma once

#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "zebra/embedding.hpp"
#include "zebra/index.hpp"
#include "zebra/kb.hpp"
#include "zebra/llm.hpp"

namespace zebra {

inline constexpr std::string_view kKnowledgeCue = "List of knowledge:";

inline constexpr std::string_view kDefaultKgSystemTemplate =
    "You are given a question and {num_choices} choices.\n"
    "Your task is to write one or more explanations that support the most likely option.\n"
    "Note that:\n"
    "* there is always one option that is correct and more likely than the others.\n"
    "* the explanations must support only the most likely option and refute all the others.\n"
    "* the explanations must be simple and concise (max 15 words).\n"
    "Do you understand the task?";

struct KgPromptConfig {
  std::size_t max_explanations_per_example = 10;
  double temperature = 0.0;
  int max_new_tokens = 256;
  /// Slots: {num_choices} (required), {labels}.
  std::string system_template{kDefaultKgSystemTemplate};
  /// Cap on parsed explanations kept from one generation.
  std::size_t max_knowledge_items = 10;
};

using KnowledgeList = std::vector<std::string>;

/// Few-shot prompt: system, acknowledgement, one user/assistant pair per
/// example (in the given order), the query, then the "List of knowledge:"
/// cue. Throws ValidationError on no examples, an example without
/// explanations, or a template missing {num_choices}.
ChatPrompt build_kg_prompt(std::span<const Example> examples, const QueryView& q,
                           const KgPromptConfig& cfg = {});

/// "1. first\n2. second"
std::string render_knowledge_numbered(std::span<const std::string> items);

/// One explanation per line; enumeration and bullet markers stripped, blank
/// lines and the cue dropped, exact duplicates removed, truncated to `cap`.
KnowledgeList parse_knowledge(std::string_view text, std::size_t cap);

struct KnowledgeResult {
  KnowledgeList knowledge;
  std::vector<RetrievalHit> hits;
  bool empty_generation = false;
};

/// Retrieve top-k examples for `q` (never q itself), prompt, generate, parse.
KnowledgeResult generate_knowledge(ChatGateway& gateway, const ExampleIndex& index,
                                   EmbeddingProvider& provider, const ExampleSet& kb,
                                   const QueryView& q, std::size_t k,
                                   const KgPromptConfig& cfg = {});

/// {query_id, hits:[{id,score}], knowledge:[...]}
nlohmann::ordered_json provenance_json(const std::string& query_id, const KnowledgeResult& r);

}  // namespace zebra
