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

#include "zebra/knowledge.hpp"

#include <cctype>
#include <unordered_set>

#include "zebra/prompt.hpp"
#include "zebra/text.hpp"

namespace zebra {

ChatPrompt build_kg_prompt(std::span<const Example> examples, const QueryView& q,
                           const KgPromptConfig& cfg) {
  if (examples.empty()) throw ValidationError("no examples");
  if (cfg.system_template.find("{num_choices}") == std::string::npos)
    throw ValidationError("knowledge prompt template lacks the {num_choices} slot");
  for (const auto& ex : examples)
    if (ex.explanations.empty())
      throw ValidationError("example \"" + ex.id + "\" has no explanations");

  const auto labels = choice_labels(q.choices);
  ChatPrompt p;
  p.push_back({Role::system, fill_template(cfg.system_template,
                                           {{"num_choices", std::to_string(q.choices.size())},
                                            {"labels", render_label_list(labels)}})});
  p.push_back({Role::assistant, std::string(kAcknowledgement)});
  for (const auto& ex : examples) {
    p.push_back({Role::user, render_question_block(ex.question, ex.choices)});
    auto n = std::min(ex.explanations.size(), cfg.max_explanations_per_example);
    std::span<const std::string> shown(ex.explanations.data(), n);
    p.push_back({Role::assistant,
                 std::string(kKnowledgeCue) + "\n" + render_knowledge_numbered(shown)});
  }
  p.push_back({Role::user, render_question_block(q.question, q.choices)});
  p.push_back({Role::assistant, std::string(kKnowledgeCue)});
  return p;
}

std::string render_knowledge_numbered(std::span<const std::string> items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += '\n';
    out += std::to_string(i + 1) + ". " + items[i];
  }
  return out;
}

namespace {

std::string_view strip_marker(std::string_view line) {
  static constexpr std::string_view kBullet = "\xE2\x80\xA2";  // U+2022
  if (line.starts_with(kBullet)) return trim(line.substr(kBullet.size()));
  if (!line.empty() && (line[0] == '-' || line[0] == '*')) return trim(line.substr(1));
  std::size_t i = 0;
  while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) ++i;
  if (i > 0 && i < line.size() && (line[i] == '.' || line[i] == ')') &&
      (i + 1 == line.size() || line[i + 1] == ' ' || line[i + 1] == '\t'))
    return trim(line.substr(i + 1));
  return line;
}

}  // namespace

KnowledgeList parse_knowledge(std::string_view text, std::size_t cap) {
  KnowledgeList out;
  std::unordered_set<std::string> seen;
  for (const auto& raw : split_lines(text)) {
    if (out.size() >= cap) break;
    auto line = trim(raw);
    if (line.empty() || line == kKnowledgeCue) continue;
    auto item = strip_marker(line);
    if (item.empty() || item == kKnowledgeCue) continue;
    std::string s(item);
    if (seen.insert(s).second) out.push_back(std::move(s));
  }
  return out;
}

KnowledgeResult generate_knowledge(ChatGateway& gateway, const ExampleIndex& index,
                                   EmbeddingProvider& provider, const ExampleSet& kb,
                                   const QueryView& q, std::size_t k, const KgPromptConfig& cfg) {
  if (k == 0) throw ValidationError("k must be at least 1");
  const std::string serialized = serialize_query(q);
  auto qvec = embed_texts(provider, std::span<const std::string>(&serialized, 1));

  KnowledgeResult r;
  r.hits = search(index, qvec.front(), k, IdSet{q.id});
  if (r.hits.empty()) throw Error("no examples retrievable for \"" + q.id + "\"");
  std::vector<Example> examples;
  for (const auto& h : r.hits) examples.push_back(kb.at(h.example_id));

  ChatRequest req;
  req.messages = build_kg_prompt(examples, q, cfg);
  req.temperature = cfg.temperature;
  req.max_new_tokens = cfg.max_new_tokens;
  auto resp = gateway.chat(req);
  r.knowledge = parse_knowledge(resp.text, cfg.max_knowledge_items);
  r.empty_generation = r.knowledge.empty();
  return r;
}

nlohmann::ordered_json provenance_json(const std::string& query_id, const KnowledgeResult& r) {
  nlohmann::ordered_json j;
  j["query_id"] = query_id;
  auto& hits = j["hits"] = nlohmann::ordered_json::array();
  for (const auto& h : r.hits) hits.push_back({{"id", h.example_id}, {"score", h.score}});
  j["knowledge"] = r.knowledge;
  if (r.empty_generation) j["empty_generation"] = true;
  return j;
}

}  // namespace zebra
