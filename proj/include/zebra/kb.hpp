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

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "zebra/error.hpp"

namespace zebra {

/// Separator inserted between the question and each choice when a query or
/// example is flattened into a single retrieval string.
inline constexpr std::string_view kSepToken = "[SEP]";

/// Returns the label for the choice at `index` ("A" for 0, "B" for 1, ...).
std::string label_for_index(std::size_t index);

/// Inverse of label_for_index; nullopt when `label` is not a single
/// uppercase letter.
std::optional<std::size_t> index_for_label(std::string_view label);

struct Choice {
  std::string label;
  std::string text;

  bool operator==(const Choice&) const = default;
};

/// Builds a choice list from texts, assigning labels by position.
std::vector<Choice> make_choices(std::span<const std::string> texts);

struct Example {
  std::string id;
  std::string question;
  std::vector<Choice> choices;
  std::optional<std::string> answer_label;
  std::vector<std::string> explanations;
  std::optional<std::string> topic;

  bool operator==(const Example&) const = default;
};

/// A question and its ordered choices: the unit that gets retrieved against
/// and answered.
struct QueryView {
  std::string id;
  std::string question;
  std::vector<Choice> choices;
};

QueryView as_query(const Example& ex);

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> violations;
};

/// Checks every Example invariant and lists all violations found.
ValidationReport validate_example(const Example& ex);
ValidationReport validate_query(const QueryView& q);

/// Question, then " [SEP] <choice>" for each choice in order.
std::string serialize_query(const QueryView& q);
std::string serialize_example(const Example& ex);

/// Id-keyed examples in file order.
class ExampleSet {
 public:
  ExampleSet() = default;
  explicit ExampleSet(std::string source_name) : source_name_(std::move(source_name)) {}

  /// Throws ValidationError if the id is already present.
  void add(Example ex);

  const Example& at(std::string_view id) const;
  const Example* find(std::string_view id) const;
  bool contains(std::string_view id) const { return find(id) != nullptr; }

  std::size_t size() const { return examples_.size(); }
  bool empty() const { return examples_.empty(); }
  const std::string& source_name() const { return source_name_; }

  auto begin() const { return examples_.begin(); }
  auto end() const { return examples_.end(); }
  const Example& operator[](std::size_t i) const { return examples_[i]; }

 private:
  std::string source_name_;
  std::vector<Example> examples_;
  std::unordered_map<std::string, std::size_t> by_id_;
};

/// Parses one KB line (JSON object). Labels are derived from position.
/// Throws ParseError on malformed JSON or missing/mistyped keys; does not
/// run validate_example.
Example parse_example_line(std::string_view line);
std::string example_to_line(const Example& ex);

/// Reads a KB file, validating every record. Errors name the 1-based line.
ExampleSet load_examples(const std::filesystem::path& path);
ExampleSet read_examples(std::istream& in, std::string source_name);

void write_examples(std::ostream& out, const ExampleSet& set);
void write_examples(const std::filesystem::path& path, const ExampleSet& set);

}  // namespace zebra
