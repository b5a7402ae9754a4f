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

#include "zebra/prompt.hpp"

namespace zebra {

std::string render_choice_lines(const std::vector<Choice>& choices) {
  std::string out;
  for (std::size_t i = 0; i < choices.size(); ++i) {
    if (i) out += '\n';
    out += choices[i].label;
    out += ". ";
    out += choices[i].text;
  }
  return out;
}

std::string render_question_block(std::string_view question, const std::vector<Choice>& choices) {
  std::string out = "Question:\n";
  out += question;
  out += "\nChoices:\n";
  out += render_choice_lines(choices);
  return out;
}

std::vector<std::string> choice_labels(const std::vector<Choice>& choices) {
  std::vector<std::string> out;
  out.reserve(choices.size());
  for (const auto& c : choices) out.push_back(c.label);
  return out;
}

std::string fill_template(std::string_view tmpl,
                          const std::vector<std::pair<std::string, std::string>>& slots) {
  std::string out(tmpl);
  for (const auto& [name, value] : slots) {
    const std::string token = "{" + name + "}";
    for (auto pos = out.find(token); pos != std::string::npos;
         pos = out.find(token, pos + value.size()))
      out.replace(pos, token.size(), value);
  }
  return out;
}

std::string render_prompt_text(const ChatPrompt& prompt) {
  std::string out;
  for (const auto& m : prompt) {
    out += "### ";
    out += role_name(m.role);
    out += '\n';
    out += m.content;
    out += '\n';
  }
  return out;
}

}  // namespace zebra
