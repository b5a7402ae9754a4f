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

#include "zebra/evaluation.hpp"

#include <ostream>

#include "zebra/parallel.hpp"
#include "zebra/prompt.hpp"
#include "zebra/text.hpp"

namespace zebra {

using ojson = nlohmann::ordered_json;

ojson EvalConfig::to_json() const {
  ojson j;
  j["mode"] = std::string(mode_name(mode));
  j["k"] = k;
  j["kb_path"] = kb_path;
  j["provider"] = provider_name;
  j["gateway"] = gateway_name;
  j["seed"] = seed;
  return j;
}

ojson PredictionRecord::to_json() const {
  ojson j;
  j["id"] = id;
  j["mode"] = std::string(mode_name(mode));
  j["chosen"] = chosen;
  if (gold) j["gold"] = *gold;
  auto& s = j["scores"] = ojson::object();
  for (const auto& [label, lp] : scores.logprobs) s[label] = lp;
  j["knowledge"] = knowledge;
  auto& r = j["retrieval"] = ojson::array();
  for (const auto& h : retrieval) r.push_back(h.example_id);
  j["flags"] = flags;
  return j;
}

ojson EvalReport::summary_json() const {
  ojson j;
  j["config"] = config;
  j["n"] = n;
  j["correct"] = correct;
  j["accuracy"] = accuracy;
  return j;
}

PredictionRecord answer_question(const Example& ex, const EvalConfig& cfg, ChatGateway& gateway,
                                 const RetrievalContext& ctx) {
  const QueryView q = as_query(ex);
  const auto labels = choice_labels(q.choices);
  PredictionRecord rec;
  rec.id = ex.id;
  rec.mode = cfg.mode;
  rec.gold = ex.answer_label;

  KnowledgeList knowledge;
  std::vector<std::string> flags;
  switch (cfg.mode) {
    case AnswerMode::zero_shot:
      break;
    case AnswerMode::zebra: {
      auto kr = generate_knowledge(gateway, *ctx.index, *ctx.provider, *ctx.kb, q, cfg.k, cfg.kg);
      rec.retrieval = std::move(kr.hits);
      knowledge = std::move(kr.knowledge);
      if (knowledge.empty()) flags.push_back("empty_knowledge_fallback");
      break;
    }
    case AnswerMode::oracle:
      knowledge = ex.explanations;
      break;
  }

  const ChatPrompt prompt = knowledge.empty() ? build_qa_prompt(q) : build_ir_prompt(q, knowledge);
  auto scores = score_choices(gateway, prompt, labels);
  auto pred = select_answer(scores, q, std::move(knowledge), cfg.mode);
  rec.chosen = pred.chosen_label;
  rec.scores = std::move(pred.scores);
  rec.knowledge = std::move(pred.knowledge);
  rec.flags = std::move(flags);
  rec.flags.insert(rec.flags.end(), pred.flags.begin(), pred.flags.end());
  return rec;
}

void check_eval_preconditions(const ExampleSet& dataset, const EvalConfig& cfg,
                              const RetrievalContext& ctx, bool require_gold) {
  if (require_gold) {
    for (const auto& ex : dataset)
      if (!ex.answer_label)
        throw ValidationError("question \"" + ex.id + "\" has no gold answer");
  }
  if (cfg.mode == AnswerMode::zebra) {
    if (!ctx.kb || !ctx.index || !ctx.provider)
      throw ValidationError("zebra mode requires a knowledge base, its vectors and a provider");
    if (cfg.k < 1) throw ValidationError("zebra mode requires k >= 1");
    if (ctx.index->dim() != ctx.provider->dim())
      throw DimensionError("provider dim " + std::to_string(ctx.provider->dim()) +
                           " does not match index dim " + std::to_string(ctx.index->dim()));
  }
  if (cfg.mode == AnswerMode::oracle) {
    for (const auto& ex : dataset)
      if (ex.explanations.empty())
        throw ValidationError("oracle mode: question \"" + ex.id + "\" has no explanations");
  }
}

std::vector<PredictionRecord> answer_all(const ExampleSet& dataset, const EvalConfig& cfg,
                                         ChatGateway& gateway, const RetrievalContext& ctx) {
  check_eval_preconditions(dataset, cfg, ctx, false);
  std::vector<std::optional<PredictionRecord>> slots(dataset.size());
  try {
    for_each_index(dataset.size(), cfg.concurrency, [&](std::size_t i) {
      slots[i] = answer_question(dataset[i], cfg, gateway, ctx);
    });
  } catch (const GatewayError& e) {
    std::vector<PredictionRecord> partial;
    for (auto& s : slots)
      if (s) partial.push_back(std::move(*s));
    throw EvalAborted(e.what(), std::move(partial));
  }
  std::vector<PredictionRecord> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

EvalReport evaluate(const ExampleSet& dataset, const EvalConfig& cfg, ChatGateway& gateway,
                    const RetrievalContext& ctx) {
  check_eval_preconditions(dataset, cfg, ctx, true);
  EvalReport report;
  report.config = cfg.to_json();
  report.records = answer_all(dataset, cfg, gateway, ctx);
  report.n = report.records.size();
  for (const auto& r : report.records) report.correct += r.correct() ? 1 : 0;
  report.accuracy =
      report.n ? static_cast<double>(report.correct) / static_cast<double>(report.n) : 0.0;
  return report;
}

std::vector<SweepRow> sweep_k(const ExampleSet& dataset, const std::vector<std::size_t>& ks,
                              const EvalConfig& cfg, ChatGateway& gateway,
                              const RetrievalContext& ctx) {
  if (cfg.mode != AnswerMode::zebra) throw ValidationError("sweep-k requires zebra mode");
  std::vector<SweepRow> rows;
  for (auto k : ks) {
    EvalConfig c = cfg;
    c.k = k;
    auto report = evaluate(dataset, c, gateway, ctx);
    rows.push_back({k, report.accuracy, report.n});
  }
  return rows;
}

void write_report(std::ostream& out, const EvalReport& report) {
  out << report.summary_json().dump(2) << '\n';
}

void write_records(std::ostream& out, const std::vector<PredictionRecord>& records) {
  for (const auto& r : records) out << r.to_json().dump() << '\n';
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "k,accuracy,n\n";
  for (const auto& r : rows) out << r.k << ',' << format_double(r.accuracy) << ',' << r.n << '\n';
}

}  // namespace zebra
