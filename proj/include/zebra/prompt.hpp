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

// Pieces shared by every prompt template.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "zebra/kb.hpp"
#include "zebra/llm.hpp"

namespace zebra {

inline constexpr std::string_view kAcknowledgement =
    "Yes, I understand. Please provide the question and the possible choices.";

/// "A. first\nB. second" (no trailing newline).
std::string render_choice_lines(const std::vector<Choice>& choices);

/// "Question:\n<question>\nChoices:\n<choice lines>"
std::string render_question_block(std::string_view question, const std::vector<Choice>& choices);

std::vector<std::string> choice_labels(const std::vector<Choice>& choices);

/// Replaces every "{name}" occurrence of each slot.
std::string fill_template(std::string_view tmpl,
                          const std::vector<std::pair<std::string, std::string>>& slots);

/// Writes a prompt as plain text: "### <role>\n<content>\n" per message. This
/// is the golden-file format.
std::string render_prompt_text(const ChatPrompt& prompt);

}  // namespace zebra
