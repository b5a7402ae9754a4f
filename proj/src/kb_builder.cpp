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

#include "zebra/kb_builder.hpp"

#include <algorithm>
#include <ostream>

#include "json.hpp"
#include "zebra/parallel.hpp"
#include "zebra/prompt.hpp"
#include "zebra/text.hpp"

namespace zebra {

ChatPrompt build_silver_prompt(std::string_view question, const std::vector<Choice>& choices,
                               const std::optional<std::string>& answer_label) {
  if (!answer_label) throw ValidationError("silver generation requires the gold answer label");
  auto labels = choice_labels(choices);
  if (std::find(labels.begin(), labels.end(), *answer_label) == labels.end())
    throw ValidationError("answer label \"" + *answer_label + "\" not among choices");

  std::string sys = "You are a helpful assistant for question answering.\n";
  sys += "You are given a question requiring commonsense knowledge to be solved, together with " +
         count_word(choices.size()) + " possible choices (labeled " + render_label_list(labels) +
         ") and the label corresponding to the correct answer.\n";
  sys += "For each choice, generate a sentence with explicit commonsense knowledge that supports "
         "or refutes the choice.\n";
  sys += "The format of the generated knowledge should be in the following form:";
  for (const auto& l : labels) sys += "\n" + l + ". ...";

  std::string user = render_question_block(question, choices);
  user += "\nCorrect answer:\n" + *answer_label;
  return {{Role::system, std::move(sys)}, {Role::user, std::move(user)}};
}

SilverParse parse_silver(std::string_view text, const std::vector<std::string>& labels) {
  SilverParse out;
  for (const auto& l : labels) out.buckets[l];
  std::vector<std::string>* open = nullptr;
  for (const auto& raw : split_lines(text)) {
    auto line = trim(raw);
    if (line.empty()) continue;
    bool opened = false;
    for (const auto& l : labels) {
      if (line.size() > l.size() && line.starts_with(l) && line[l.size()] == '.') {
        auto rest = line.substr(l.size() + 1);
        if (!rest.empty() && rest[0] != ' ' && rest[0] != '\t') continue;  // "A.M." etc.
        open = &out.buckets[l];
        if (auto body = trim(rest); !body.empty()) open->emplace_back(body);
        opened = true;
        break;
      }
    }
    if (!opened && open) open->emplace_back(line);
  }
  for (const auto& l : labels)
    if (out.buckets[l].empty()) out.missing_labels.push_back(l);
  return out;
}

namespace {

struct Outcome {
  std::vector<std::string> explanations;
  std::optional<std::string> failure;
  std::optional<std::string> warning;
};

Outcome build_one(const Example& ex, ChatGateway& gateway, const KbBuildParams& params) {
  Outcome o;
  ChatRequest req;
  req.messages = build_silver_prompt(ex.question, ex.choices, ex.answer_label);
  req.temperature = params.temperature;
  req.max_new_tokens = params.max_new_tokens;
  ChatResponse resp;
  try {
    resp = gateway.chat(req);
  } catch (const GatewayError& e) {
    o.failure = std::string("gateway error: ") + e.what();
    return o;
  }
  auto labels = choice_labels(ex.choices);
  auto parsed = parse_silver(resp.text, labels);
  const auto& gold = *ex.answer_label;
  for (const auto& s : parsed.buckets[gold]) o.explanations.push_back(s);
  for (const auto& l : labels) {
    if (l == gold) continue;
    for (const auto& s : parsed.buckets[l]) o.explanations.push_back(s);
  }
  if (o.explanations.size() > params.max_explanations) o.explanations.resize(params.max_explanations);
  if (o.explanations.empty()) {
    o.failure = trim(resp.text).empty() ? "empty output" : "no labeled explanations in output";
  } else if (!parsed.missing_labels.empty()) {
    o.warning = "no explanation for labels " + join(parsed.missing_labels, ",");
  }
  return o;
}

}  // namespace

KbBuildResult generate_kb(const ExampleSet& dataset, ChatGateway& gateway,
                          const KbBuildParams& params) {
  for (const auto& ex : dataset) {
    if (!ex.answer_label)
      throw ValidationError("example \"" + ex.id + "\" has no gold answer; silver generation "
                            "needs one");
  }
  std::vector<Outcome> outcomes(dataset.size());
  for_each_index(dataset.size(), params.concurrency,
                 [&](std::size_t i) { outcomes[i] = build_one(dataset[i], gateway, params); });

  KbBuildResult r{ExampleSet(dataset.source_name()), {}, {}};
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    Example ex = dataset[i];
    ex.explanations = std::move(outcomes[i].explanations);
    if (outcomes[i].failure) r.failures.push_back({ex.id, *outcomes[i].failure});
    if (outcomes[i].warning) r.warnings.push_back({ex.id, *outcomes[i].warning});
    r.kb.add(std::move(ex));
  }
  return r;
}

void write_issues(std::ostream& out, const std::vector<KbIssue>& issues) {
  for (const auto& i : issues) {
    nlohmann::ordered_json j;
    j["id"] = i.id;
    j["reason"] = i.reason;
    out << j.dump() << '\n';
  }
}

}  // namespace zebra
