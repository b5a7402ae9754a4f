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

// Silver knowledge base construction: a generator model writes one
// supporting or refuting sentence per choice, given the gold answer.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zebra/kb.hpp"
#include "zebra/llm.hpp"

namespace zebra {

/// System + user turn. Throws ValidationError without a valid answer label.
ChatPrompt build_silver_prompt(std::string_view question, const std::vector<Choice>& choices,
                               const std::optional<std::string>& answer_label);

struct SilverParse {
  std::map<std::string, std::vector<std::string>> buckets;  // every label present
  std::vector<std::string> missing_labels;
};

/// A line starting with "<label>." opens that label's bucket; later lines
/// append to it until another label opens. Text before the first label is
/// ignored.
SilverParse parse_silver(std::string_view text, const std::vector<std::string>& labels);

struct KbBuildParams {
  double temperature = 0.0;
  int max_new_tokens = 256;
  std::size_t max_explanations = 10;
  std::size_t concurrency = 1;
};

struct KbIssue {
  std::string id;
  std::string reason;
};

struct KbBuildResult {
  ExampleSet kb;
  std::vector<KbIssue> failures;  // entry emitted with no explanations
  std::vector<KbIssue> warnings;  // e.g. labels the generator skipped
};

/// One generation per example; the answer's bucket comes first, then the
/// other labels in order, truncated to params.max_explanations. Output
/// preserves input order regardless of concurrency.
KbBuildResult generate_kb(const ExampleSet& dataset, ChatGateway& gateway,
                          const KbBuildParams& params = {});

void write_issues(std::ostream& out, const std::vector<KbIssue>& issues);

}  // namespace zebra
