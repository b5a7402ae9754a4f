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

#include "zebra/kb.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "zebra/text.hpp"

namespace zebra {

using ojson = nlohmann::ordered_json;

std::string label_for_index(std::size_t index) {
  if (index >= 26) throw ValidationError("choice index " + std::to_string(index) + " has no label");
  return std::string(1, static_cast<char>('A' + index));
}

std::optional<std::size_t> index_for_label(std::string_view label) {
  if (label.size() != 1 || label[0] < 'A' || label[0] > 'Z') return std::nullopt;
  return static_cast<std::size_t>(label[0] - 'A');
}

std::vector<Choice> make_choices(std::span<const std::string> texts) {
  std::vector<Choice> out;
  out.reserve(texts.size());
  for (std::size_t i = 0; i < texts.size(); ++i) out.push_back({label_for_index(i), texts[i]});
  return out;
}

QueryView as_query(const Example& ex) { return {ex.id, ex.question, ex.choices}; }

namespace {

bool has_newline(std::string_view s) { return s.find_first_of("\r\n") != std::string_view::npos; }
bool has_sep(std::string_view s) { return s.find(kSepToken) != std::string_view::npos; }

void check_text_field(std::string_view text, const std::string& what,
                      std::vector<std::string>& out) {
  if (trim(text).empty()) {
    out.push_back("empty " + what);
    return;
  }
  if (has_newline(text)) out.push_back(what + " contains a newline");
  if (has_sep(text)) out.push_back(what + " contains the separator token [SEP]");
}

void check_question_and_choices(std::string_view question, const std::vector<Choice>& choices,
                                std::vector<std::string>& out) {
  check_text_field(question, "question", out);
  if (choices.size() < 2) out.push_back("fewer than 2 choices");
  if (choices.size() > 26) out.push_back("more than 26 choices");
  bool consecutive = true;
  for (std::size_t i = 0; i < choices.size(); ++i) {
    auto idx = index_for_label(choices[i].label);
    if (!idx || *idx != i) consecutive = false;
    check_text_field(choices[i].text, "choice text at index " + std::to_string(i), out);
  }
  if (!consecutive) out.push_back("labels not consecutive from A");
}

}  // namespace

ValidationReport validate_example(const Example& ex) {
  ValidationReport r;
  if (trim(ex.id).empty()) r.violations.push_back("empty id");
  check_question_and_choices(ex.question, ex.choices, r.violations);
  if (ex.answer_label) {
    bool found = false;
    for (const auto& c : ex.choices) found = found || c.label == *ex.answer_label;
    if (!found) r.violations.push_back("answer label not among choices");
  }
  for (std::size_t i = 0; i < ex.explanations.size(); ++i) {
    if (trim(ex.explanations[i]).empty())
      r.violations.push_back("empty explanation at index " + std::to_string(i));
  }
  r.ok = r.violations.empty();
  return r;
}

ValidationReport validate_query(const QueryView& q) {
  ValidationReport r;
  check_question_and_choices(q.question, q.choices, r.violations);
  r.ok = r.violations.empty();
  return r;
}

std::string serialize_query(const QueryView& q) {
  std::string out = q.question;
  for (const auto& c : q.choices) {
    out += ' ';
    out += kSepToken;
    out += ' ';
    out += c.text;
  }
  return out;
}

std::string serialize_example(const Example& ex) { return serialize_query(as_query(ex)); }

void ExampleSet::add(Example ex) {
  if (by_id_.contains(ex.id)) throw ValidationError("duplicate id \"" + ex.id + "\"");
  by_id_.emplace(ex.id, examples_.size());
  examples_.push_back(std::move(ex));
}

const Example* ExampleSet::find(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  return it == by_id_.end() ? nullptr : &examples_[it->second];
}

const Example& ExampleSet::at(std::string_view id) const {
  const Example* ex = find(id);
  if (!ex) throw Error("unknown example id \"" + std::string(id) + "\"");
  return *ex;
}

Example parse_example_line(std::string_view line) {
  ojson j;
  try {
    j = ojson::parse(line);
  } catch (const ojson::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("record is not a JSON object");

  auto require_string = [&](const char* key) -> std::string {
    if (!j.contains(key) || !j[key].is_string())
      throw ParseError(std::string("missing or non-string \"") + key + "\"");
    return j[key].get<std::string>();
  };
  auto string_array = [&](const char* key, bool required) {
    std::vector<std::string> out;
    if (!j.contains(key) || j[key].is_null()) {
      if (required) throw ParseError(std::string("missing \"") + key + "\"");
      return out;
    }
    if (!j[key].is_array()) throw ParseError(std::string("\"") + key + "\" is not an array");
    for (const auto& v : j[key]) {
      if (!v.is_string()) throw ParseError(std::string("non-string entry in \"") + key + "\"");
      out.push_back(v.get<std::string>());
    }
    return out;
  };
  auto optional_string = [&](const char* key) -> std::optional<std::string> {
    if (!j.contains(key) || j[key].is_null()) return std::nullopt;
    if (!j[key].is_string()) throw ParseError(std::string("\"") + key + "\" is not a string");
    return j[key].get<std::string>();
  };

  Example ex;
  ex.id = require_string("id");
  ex.question = require_string("question");
  auto choices = string_array("choices", true);
  if (choices.size() > 26) throw ParseError("more than 26 choices");
  ex.choices = make_choices(choices);
  ex.answer_label = optional_string("answer");
  ex.explanations = string_array("explanations", false);
  ex.topic = optional_string("topic");
  return ex;
}

std::string example_to_line(const Example& ex) {
  ojson j;
  j["id"] = ex.id;
  j["question"] = ex.question;
  auto& choices = j["choices"] = ojson::array();
  for (const auto& c : ex.choices) choices.push_back(c.text);
  if (ex.answer_label) j["answer"] = *ex.answer_label;
  j["explanations"] = ex.explanations;
  if (ex.topic) j["topic"] = *ex.topic;
  return j.dump();
}

ExampleSet read_examples(std::istream& in, std::string source_name) {
  ExampleSet set(std::move(source_name));
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto where = [&] { return set.source_name() + ":" + std::to_string(line_no) + ": "; };
    Example ex;
    try {
      ex = parse_example_line(line);
    } catch (const ParseError& e) {
      throw ParseError(where() + e.what());
    }
    auto report = validate_example(ex);
    if (!report.ok) throw ValidationError(where() + "invalid example \"" + ex.id + "\": " +
                                          join(report.violations, "; "));
    if (set.contains(ex.id))
      throw ValidationError(where() + "duplicate id \"" + ex.id + "\" (line " +
                            std::to_string(line_no) + ")");
    set.add(std::move(ex));
  }
  if (in.bad()) throw IoError("read failure in " + set.source_name());
  return set;
}

ExampleSet load_examples(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return read_examples(in, path.string());
}

void write_examples(std::ostream& out, const ExampleSet& set) {
  for (const auto& ex : set) out << example_to_line(ex) << '\n';
}

void write_examples(const std::filesystem::path& path, const ExampleSet& set) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  write_examples(out, set);
  if (!out) throw IoError("write failure on " + path.string());
}

}  // namespace zebra
