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

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "zebra/index.hpp"
#include "zebra/kb.hpp"
#include "zebra/knowledge.hpp"
#include "zebra/llm.hpp"
#include "zebra/reasoning.hpp"

namespace zebra {

struct EvalConfig {
  AnswerMode mode = AnswerMode::zero_shot;
  std::size_t k = 5;
  std::string kb_path;
  std::string provider_name;
  std::string gateway_name;
  std::uint64_t seed = 0;
  std::size_t concurrency = 1;
  KgPromptConfig kg;

  nlohmann::ordered_json to_json() const;
};

/// Example store the zebra mode retrieves from. The KB may come from a
/// different dataset than the questions being answered.
struct RetrievalContext {
  const ExampleSet* kb = nullptr;
  const ExampleIndex* index = nullptr;
  EmbeddingProvider* provider = nullptr;
};

struct PredictionRecord {
  std::string id;
  AnswerMode mode = AnswerMode::zero_shot;
  std::string chosen;
  std::optional<std::string> gold;
  ChoiceScores scores;
  KnowledgeList knowledge;
  std::vector<RetrievalHit> retrieval;
  std::vector<std::string> flags;

  bool correct() const { return gold && *gold == chosen; }
  nlohmann::ordered_json to_json() const;
};

/// Answers one question in the configured mode. Zebra mode with empty
/// generated knowledge falls back to the zero-shot prompt and records the
/// "empty_knowledge_fallback" flag.
PredictionRecord answer_question(const Example& question, const EvalConfig& cfg,
                                 ChatGateway& gateway, const RetrievalContext& ctx);

struct EvalReport {
  std::size_t n = 0;
  std::size_t correct = 0;
  double accuracy = 0.0;
  std::vector<PredictionRecord> records;
  nlohmann::ordered_json config;

  /// {config, n, correct, accuracy}
  nlohmann::ordered_json summary_json() const;
};

/// Thrown when a gateway error stops a run; carries every record that
/// finished before the abort, in dataset order.
class EvalAborted : public Error {
 public:
  EvalAborted(const std::string& what, std::vector<PredictionRecord> partial)
      : Error(what), partial_(std::move(partial)) {}
  const std::vector<PredictionRecord>& partial() const { return partial_; }

 private:
  std::vector<PredictionRecord> partial_;
};

/// Throws ValidationError when mode preconditions fail (gold answers, KB for
/// zebra, stored explanations for oracle).
void check_eval_preconditions(const ExampleSet& dataset, const EvalConfig& cfg,
                              const RetrievalContext& ctx, bool require_gold);

/// Predictions for every question in dataset order; parallel up to
/// cfg.concurrency.
std::vector<PredictionRecord> answer_all(const ExampleSet& dataset, const EvalConfig& cfg,
                                         ChatGateway& gateway, const RetrievalContext& ctx);

EvalReport evaluate(const ExampleSet& dataset, const EvalConfig& cfg, ChatGateway& gateway,
                    const RetrievalContext& ctx = {});

struct SweepRow {
  std::size_t k = 0;
  double accuracy = 0.0;
  std::size_t n = 0;
};

/// One zebra-mode evaluation per k, in the order given.
std::vector<SweepRow> sweep_k(const ExampleSet& dataset, const std::vector<std::size_t>& ks,
                              const EvalConfig& cfg, ChatGateway& gateway,
                              const RetrievalContext& ctx);

/// Pretty-printed summary_json plus a trailing newline.
void write_report(std::ostream& out, const EvalReport& report);
void write_records(std::ostream& out, const std::vector<PredictionRecord>& records);
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace zebra
