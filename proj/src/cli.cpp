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

#include "zebra/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "zebra/adapter.hpp"
#include "zebra/evaluation.hpp"
#include "zebra/http.hpp"
#include "zebra/index.hpp"
#include "zebra/kb.hpp"
#include "zebra/kb_builder.hpp"
#include "zebra/llm.hpp"
#include "zebra/text.hpp"
#include "zebra/trainer.hpp"

namespace zebra::cli {
namespace {

using json = nlohmann::json;

struct Globals {
  std::uint64_t seed = 0;
  std::string config_path;
  std::string cache_dir;
  bool mock = false;
  std::string mock_script;
  std::size_t concurrency = 1;
  std::string provider = "hash";
  std::size_t dim = 0;
  std::string adapter;
  std::string query_vectors;
  json config = json::object();
  bool seed_given = false;
};

struct QaFlags {
  std::string dataset;
  std::string mode = "zero_shot";
  std::size_t k = 5;
  std::string kb;
  std::string vectors;
  std::string out;
  std::string records;
  std::vector<std::size_t> ks{1, 3, 5, 10, 20};
};

json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw ParseError(path + ": config must be a JSON object");
  return j;
}

std::vector<std::string> config_values(const json& v) {
  std::vector<std::string> out;
  auto one = [](const json& x) {
    if (x.is_string()) return x.get<std::string>();
    if (x.is_boolean()) return std::string(x.get<bool>() ? "true" : "false");
    return x.dump();
  };
  if (v.is_array()) {
    for (const auto& x : v) out.push_back(one(x));
  } else {
    out.push_back(one(v));
  }
  return out;
}

// Fills options the command line left unset from a config object. Keys mirror
// long flag names; '-' and '_' are interchangeable.
void merge_config(CLI::App& app, const json& section) {
  if (!section.is_object()) return;
  for (CLI::Option* opt : app.get_options()) {
    if (opt->count() > 0 || opt->get_lnames().empty()) continue;
    const std::string& name = opt->get_lnames().front();
    if (name == "help" || name == "config") continue;
    std::string alt = name;
    std::replace(alt.begin(), alt.end(), '-', '_');
    const json* v = nullptr;
    if (section.contains(name)) v = &section[name];
    else if (section.contains(alt)) v = &section[alt];
    if (!v || v->is_object() || v->is_null()) continue;
    for (const auto& s : config_values(*v)) opt->add_result(s);
    opt->run_callback();
  }
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot write " + path);
  return f;
}

std::string api_env_for(const json& section, const std::string& name) {
  if (section.contains("api_key_env")) return section["api_key_env"].get<std::string>();
  std::string env;
  for (char c : name) {
    const auto u = static_cast<unsigned char>(c);
    env += std::isalnum(u) ? static_cast<char>(std::toupper(u)) : '_';
  }
  return env + "_API_KEY";
}

class Runtime {
 public:
  explicit Runtime(Globals g) : g_(std::move(g)) {
    if (g_.cache_dir.empty()) {
      if (const char* env = std::getenv("ZEBRA_CACHE_DIR")) g_.cache_dir = env;
    }
  }

  const Globals& globals() const { return g_; }

  std::shared_ptr<const AdapterWeights> adapter() {
    if (g_.adapter.empty()) return nullptr;
    if (!adapter_) adapter_ = std::make_shared<const AdapterWeights>(load_adapter(g_.adapter));
    return adapter_;
  }

  ChatGateway& gateway() {
    if (gateway_) return *gateway_;
    std::shared_ptr<ChatGateway> inner;
    if (!g_.mock_script.empty()) {
      inner = load_mock_script(g_.mock_script,
                               g_.seed_given ? std::optional<std::uint64_t>(g_.seed) : std::nullopt);
    } else if (g_.mock) {
      inner = configure_mock({}, g_.seed);
    } else if (g_.config.contains("gateway") && g_.config["gateway"].is_object()) {
      const auto& s = g_.config["gateway"];
      RemoteChatConfig rc;
      rc.name = s.value("name", std::string("remote"));
      rc.base_url = s.value("base_url", std::string());
      rc.model = s.value("model", std::string());
      rc.api_key_env = api_env_for(s, rc.name);
      rc.top_logprobs = s.value("top_logprobs", rc.top_logprobs);
      rc.max_in_flight = s.value("max_in_flight", rc.max_in_flight);
      if (rc.base_url.empty() || rc.model.empty())
        throw ValidationError("gateway config needs \"base_url\" and \"model\"");
      inner = std::make_shared<RetryingGateway>(
          std::make_shared<RemoteGateway>(rc, make_http_transport()));
    } else {
      throw ValidationError("no chat model configured: pass --mock or add a \"gateway\" section "
                            "to --config");
    }
    std::optional<std::filesystem::path> file;
    if (!g_.cache_dir.empty()) {
      std::filesystem::create_directories(g_.cache_dir);
      file = std::filesystem::path(g_.cache_dir) / "chat_cache.jsonl";
    }
    caching_ = std::make_shared<CachingGateway>(inner, file);
    gateway_ = caching_;
    return *gateway_;
  }

  std::string gateway_name() const {
    if (!g_.mock_script.empty() || g_.mock) return "mock";
    if (g_.config.contains("gateway")) return g_.config["gateway"].value("model", std::string());
    return "";
  }

  // Base (unadapted) embedding provider by name.
  std::shared_ptr<EmbeddingProvider> base_provider(std::size_t dim_hint) {
    if (g_.provider == "hash") {
      std::size_t dim = g_.dim ? g_.dim : dim_hint;
      if (dim == 0) throw ValidationError("--provider hash needs --dim");
      return std::make_shared<HashEmbeddingProvider>(dim, g_.seed);
    }
    const json providers = g_.config.value("providers", json::object());
    if (!providers.contains(g_.provider))
      throw ValidationError("unknown provider \"" + g_.provider + "\"");
    const auto& s = providers[g_.provider];
    RemoteEmbeddingConfig rc;
    rc.name = g_.provider;
    rc.base_url = s.value("base_url", std::string());
    rc.model = s.value("model", std::string());
    rc.api_key_env = api_env_for(s, g_.provider);
    rc.dim = s.value("dim", g_.dim ? g_.dim : dim_hint);
    rc.batch_size = s.value("batch_size", rc.batch_size);
    rc.max_in_flight = s.value("max_in_flight", rc.max_in_flight);
    return std::make_shared<RemoteEmbeddingProvider>(rc, make_http_transport());
  }

  std::shared_ptr<EmbeddingProvider> provider(std::size_t dim_hint) {
    auto a = adapter();
    auto base = base_provider(a ? a->d_in : dim_hint);
    if (!a) return base;
    return std::make_shared<AdaptedEmbeddingProvider>(base, a);
  }

  std::vector<IdVector> kb_vectors(const std::string& path) {
    auto rows = load_vectors(path);
    if (auto a = adapter())
      for (auto& r : rows) r.vector = a->apply(r.vector);
    return rows;
  }

  // Query embeddings either precomputed (keyed by the questions' serialized
  // text) or from the configured provider.
  std::shared_ptr<EmbeddingProvider> query_provider(const ExampleSet& questions,
                                                    std::size_t index_dim) {
    if (g_.query_vectors.empty()) return provider(index_dim);
    auto rows = load_vectors(g_.query_vectors);
    if (rows.empty()) throw ValidationError(g_.query_vectors + ": no query vectors");
    auto a = adapter();
    std::size_t dim = a ? a->d_out : rows.front().vector.dim();
    auto table = std::make_shared<TableEmbeddingProvider>("query-vectors", dim);
    for (auto& r : rows) {
      const Example* ex = questions.find(r.id);
      if (!ex) throw ValidationError("query vector id \"" + r.id + "\" is not a question");
      table->insert(serialize_query(as_query(*ex)), a ? a->apply(r.vector) : r.vector);
    }
    return table;
  }

  void report_cache(std::ostream& err) const {
    if (caching_ && !g_.cache_dir.empty())
      err << "cache: " << caching_->hits() << " hits, " << caching_->misses() << " misses\n";
  }

 private:
  Globals g_;
  std::shared_ptr<const AdapterWeights> adapter_;
  std::shared_ptr<CachingGateway> caching_;
  std::shared_ptr<ChatGateway> gateway_;
};

void require(const std::string& value, const std::string& cmd, const std::string& flag,
             const std::string& context = "") {
  if (value.empty())
    throw ValidationError(cmd + (context.empty() ? "" : " " + context) + " requires " + flag);
}

int cmd_kb_validate(const std::string& path, std::ostream& out) {
  require(path, "kb validate", "a path");
  auto set = load_examples(path);
  out << set.size() << " examples OK\n";
  return kExitOk;
}

int cmd_kb_build(Runtime& rt, const std::string& dataset_path, const std::string& out_path,
                 std::string failures_path, std::size_t max_expl, std::ostream& out,
                 std::ostream& err) {
  require(dataset_path, "kb build", "--dataset");
  require(out_path, "kb build", "--out");
  auto dataset = load_examples(dataset_path);
  KbBuildParams params;
  params.max_explanations = max_expl;
  params.concurrency = rt.globals().concurrency;
  auto result = generate_kb(dataset, rt.gateway(), params);
  write_examples(std::filesystem::path(out_path), result.kb);
  if (failures_path.empty()) failures_path = out_path + ".failures.jsonl";
  auto f = open_out(failures_path);
  write_issues(f, result.failures);
  for (const auto& w : result.warnings) err << "warning: " << w.id << ": " << w.reason << '\n';
  out << result.kb.size() << " entries written, " << result.failures.size() << " failures\n";
  rt.report_cache(err);
  return kExitOk;
}

int cmd_embed(Runtime& rt, const std::string& kb_path, const std::string& out_path,
              std::ostream& out) {
  require(kb_path, "embed", "--kb");
  require(out_path, "embed", "--out");
  auto kb = load_examples(kb_path);
  auto provider = rt.provider(0);
  auto rows = embed_examples(*provider, kb);
  write_vectors(std::filesystem::path(out_path), rows);
  out << rows.size() << " vectors of dim " << provider->dim() << " written\n";
  return kExitOk;
}

int cmd_retrieve(Runtime& rt, const std::string& kb_path, const std::string& vectors,
                 const std::string& query_file, std::size_t k, bool exclude_self,
                 std::ostream& out) {
  require(kb_path, "retrieve", "--kb");
  require(vectors, "retrieve", "--vectors");
  require(query_file, "retrieve", "--query-file");
  auto kb = load_examples(kb_path);
  auto index = build_index(rt.kb_vectors(vectors));
  for (const auto& id : index.ids())
    if (!kb.contains(id)) throw ValidationError("vector id \"" + id + "\" is not in the KB");
  auto queries = load_examples(query_file);
  auto provider = rt.query_provider(queries, index.dim());
  for (const auto& q : queries) {
    std::vector<std::string> text{serialize_query(as_query(q))};
    auto qv = embed_texts(*provider, text);
    IdSet exclude;
    if (exclude_self) exclude.insert(q.id);
    nlohmann::ordered_json j;
    j["id"] = q.id;
    j["hits"] = nlohmann::ordered_json::array();
    for (const auto& h : search(index, qv.front(), k, exclude))
      j["hits"].push_back({{"id", h.example_id}, {"score", h.score}});
    out << j.dump() << '\n';
  }
  return kExitOk;
}

int cmd_train(Runtime& rt, const std::string& kb_path, const std::string& vectors,
              const std::string& out_path, const std::string& trace_path,
              const std::string& validation_path, std::optional<long> max_steps,
              std::optional<double> lr, std::ostream& out) {
  require(kb_path, "train-retriever", "--kb");
  require(vectors, "train-retriever", "--vectors");
  require(out_path, "train-retriever", "--out");
  const auto& g = rt.globals();
  const json& section = g.config.contains("train") ? g.config["train"] : g.config;
  TrainConfig cfg = train_config_from_json(section.dump());
  if (g.seed_given) cfg.seed = g.seed;
  if (max_steps) cfg.max_steps = *max_steps;
  if (lr) cfg.learning_rate = *lr;
  cfg.validate();

  auto kb = load_examples(kb_path);
  auto rows = load_vectors(vectors);
  auto base = base_from_rows(rows);
  std::optional<ExampleSet> validation;
  if (!validation_path.empty()) validation = load_examples(validation_path);
  std::shared_ptr<EmbeddingProvider> augment;
  if (cfg.augment_variants > 0) augment = rt.base_provider(rows.empty() ? 0 : rows.front().vector.dim());

  TrainInputs in;
  in.train = &kb;
  in.base = &base;
  in.augment_provider = augment.get();
  in.validation = validation ? &*validation : nullptr;
  auto result = train_adapter(cfg, in);
  save_adapter(out_path, result.weights);
  if (!trace_path.empty()) {
    auto f = open_out(trace_path);
    write_trace_csv(f, result.trace);
  }
  out << "steps=" << result.trace.size() << " best_step=" << result.best_step;
  if (!result.trace.empty()) out << " final_loss=" << format_double(result.trace.back().loss);
  out << '\n';
  return kExitOk;
}

struct QaSetup {
  ExampleSet dataset;
  std::optional<ExampleSet> kb;
  std::optional<ExampleIndex> index;
  std::shared_ptr<EmbeddingProvider> provider;
  EvalConfig cfg;
  RetrievalContext ctx() const {
    RetrievalContext c;
    if (kb) c.kb = &*kb;
    if (index) c.index = &*index;
    c.provider = provider.get();
    return c;
  }
};

QaSetup setup_qa(Runtime& rt, const std::string& cmd, const QaFlags& f, AnswerMode mode) {
  require(f.dataset, cmd, "--dataset");
  QaSetup s;
  s.cfg.mode = mode;
  s.cfg.k = f.k;
  s.cfg.seed = rt.globals().seed;
  s.cfg.concurrency = rt.globals().concurrency;
  s.dataset = load_examples(f.dataset);
  if (mode == AnswerMode::zebra) {
    require(f.kb, cmd, "--kb", "--mode zebra");
    require(f.vectors, cmd, "--vectors", "--mode zebra");
    s.cfg.kb_path = f.kb;
    s.cfg.provider_name = rt.globals().query_vectors.empty() ? rt.globals().provider
                                                             : "query-vectors";
    s.kb = load_examples(f.kb);
    s.index = build_index(rt.kb_vectors(f.vectors));
    for (const auto& id : s.index->ids())
      if (!s.kb->contains(id)) throw ValidationError("vector id \"" + id + "\" is not in the KB");
    s.provider = rt.query_provider(s.dataset, s.index->dim());
  }
  s.cfg.gateway_name = rt.gateway_name();
  return s;
}

template <typename Body>
int with_partial(const std::string& records_path, Body&& body) {
  try {
    return body();
  } catch (const EvalAborted& e) {
    if (!records_path.empty()) {
      auto f = open_out(records_path);
      write_records(f, e.partial());
    }
    throw;
  }
}

int cmd_answer(Runtime& rt, const QaFlags& f, std::ostream& out, std::ostream& err) {
  auto s = setup_qa(rt, "answer", f, mode_from_name(f.mode));
  return with_partial(f.out, [&] {
    auto records = answer_all(s.dataset, s.cfg, rt.gateway(), s.ctx());
    if (f.out.empty()) {
      write_records(out, records);
    } else {
      auto o = open_out(f.out);
      write_records(o, records);
    }
    rt.report_cache(err);
    return kExitOk;
  });
}

int cmd_evaluate(Runtime& rt, const QaFlags& f, std::ostream& out, std::ostream& err) {
  auto s = setup_qa(rt, "evaluate", f, mode_from_name(f.mode));
  return with_partial(f.records, [&] {
    auto report = evaluate(s.dataset, s.cfg, rt.gateway(), s.ctx());
    if (f.out.empty()) {
      write_report(out, report);
    } else {
      auto o = open_out(f.out);
      write_report(o, report);
      out << "accuracy " << format_double(report.accuracy) << " (" << report.correct << "/"
          << report.n << ")\n";
    }
    if (!f.records.empty()) {
      auto o = open_out(f.records);
      write_records(o, report.records);
    }
    rt.report_cache(err);
    return kExitOk;
  });
}

int cmd_sweep(Runtime& rt, const QaFlags& f, std::ostream& out, std::ostream& err) {
  auto s = setup_qa(rt, "sweep-k", f, AnswerMode::zebra);
  auto rows = sweep_k(s.dataset, f.ks, s.cfg, rt.gateway(), s.ctx());
  if (f.out.empty()) {
    write_sweep_csv(out, rows);
  } else {
    auto o = open_out(f.out);
    write_sweep_csv(o, rows);
  }
  rt.report_cache(err);
  return kExitOk;
}

void add_qa_flags(CLI::App* sub, QaFlags& f, bool with_mode, bool with_ks) {
  sub->add_option("--dataset", f.dataset, "Questions JSONL");
  if (with_mode) sub->add_option("--mode", f.mode, "zero_shot | zebra | oracle");
  if (!with_ks) sub->add_option("--k", f.k, "Examples retrieved per question");
  sub->add_option("--kb", f.kb, "Knowledge base JSONL (zebra mode)");
  sub->add_option("--vectors", f.vectors, "KB embedding JSONL (zebra mode)");
  sub->add_option("--out", f.out, "Output file (default stdout)");
  if (with_ks) sub->add_option("--ks", f.ks, "k values to sweep")->delimiter(',');
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Example retrieval and knowledge-augmented multiple-choice QA", "zebra"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  Globals g;
  auto* seed_opt = app.add_option("--seed", g.seed, "Seed for every sampled choice");
  app.add_option("--config", g.config_path, "JSON config; keys mirror flag names");
  app.add_option("--cache", g.cache_dir, "Response cache directory (default $ZEBRA_CACHE_DIR)");
  app.add_flag("--mock", g.mock, "Use the scripted mock chat model");
  app.add_option("--mock-script", g.mock_script, "Mock rules JSON (implies --mock)");
  app.add_option("--concurrency", g.concurrency, "Concurrent model calls")
      ->check(CLI::PositiveNumber);
  app.add_option("--provider", g.provider, "Embedding provider: hash or a configured name");
  app.add_option("--dim", g.dim, "Embedding dim for the hash provider");
  app.add_option("--adapter", g.adapter, "Adapter JSON applied to every embedding");
  app.add_option("--query-vectors", g.query_vectors, "Precomputed question embeddings JSONL");

  auto* kb = app.add_subcommand("kb", "Knowledge base tools")->require_subcommand(1);
  auto* kb_validate = kb->add_subcommand("validate", "Check a KB file");
  std::string validate_path;
  kb_validate->add_option("path", validate_path, "KB JSONL");
  auto* kb_build = kb->add_subcommand("build", "Generate silver explanations");
  std::string build_dataset, build_out, build_failures;
  std::size_t max_expl = 10;
  kb_build->add_option("--dataset", build_dataset, "Labelled dataset JSONL");
  kb_build->add_option("--out", build_out, "KB JSONL to write");
  kb_build->add_option("--failures", build_failures, "Failure list (default <out>.failures.jsonl)");
  kb_build->add_option("--max-explanations", max_expl, "Cap per entry");

  auto* embed = app.add_subcommand("embed", "Embed every KB entry");
  std::string embed_kb, embed_out;
  embed->add_option("--kb", embed_kb, "KB JSONL");
  embed->add_option("--out", embed_out, "Vectors JSONL to write");

  auto* retrieve = app.add_subcommand("retrieve", "Top-k KB entries per query");
  std::string r_kb, r_vectors, r_queries;
  std::size_t r_k = 5;
  bool r_exclude_self = false;
  retrieve->add_option("--kb", r_kb, "KB JSONL");
  retrieve->add_option("--vectors", r_vectors, "KB vectors JSONL");
  retrieve->add_option("--query-file", r_queries, "Queries JSONL");
  retrieve->add_option("--k", r_k, "Hits per query");
  retrieve->add_flag("--exclude-self", r_exclude_self, "Drop the KB entry with the query's id");

  auto* train = app.add_subcommand("train-retriever", "Fit an embedding adapter");
  std::string t_kb, t_vectors, t_out, t_trace, t_validation;
  std::optional<long> t_steps;
  std::optional<double> t_lr;
  train->add_option("--kb", t_kb, "Topic-labelled KB JSONL");
  train->add_option("--vectors", t_vectors, "Base KB vectors JSONL");
  train->add_option("--out", t_out, "Adapter JSON to write");
  train->add_option("--trace", t_trace, "Loss trace CSV");
  train->add_option("--validation", t_validation, "Validation KB JSONL (same vectors file)");
  train->add_option("--max-steps", t_steps, "Override max_steps");
  train->add_option("--lr", t_lr, "Override learning_rate");

  QaFlags answer_flags, eval_flags, sweep_flags;
  auto* answer = app.add_subcommand("answer", "Predictions JSONL");
  add_qa_flags(answer, answer_flags, true, false);
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Accuracy report");
  add_qa_flags(evaluate_cmd, eval_flags, true, false);
  evaluate_cmd->add_option("--records", eval_flags.records, "Per-question records JSONL");
  auto* sweep = app.add_subcommand("sweep-k", "Zebra accuracy per k as CSV");
  add_qa_flags(sweep, sweep_flags, false, true);

  for (auto* sub : {kb, kb_validate, kb_build, embed, retrieve, train, answer, evaluate_cmd, sweep})
    sub->fallthrough();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitRuntime;
  }

  try {
    if (!g.config_path.empty()) {
      g.config = load_json_file(g.config_path);
      merge_config(app, g.config);
      for (auto* sub : app.get_subcommands()) {
        json section = g.config.value(sub->get_name(), json::object());
        merge_config(*sub, section);
        for (auto* leaf : sub->get_subcommands()) {
          merge_config(*leaf, section.value(leaf->get_name(), json::object()));
          merge_config(*leaf, g.config);
        }
        merge_config(*sub, g.config);
      }
    }
    g.seed_given = seed_opt->count() > 0;
    if (!g.mock_script.empty()) g.mock = true;
    Runtime rt(g);

    if (kb_validate->parsed()) return cmd_kb_validate(validate_path, out);
    if (kb_build->parsed())
      return cmd_kb_build(rt, build_dataset, build_out, build_failures, max_expl, out, err);
    if (embed->parsed()) return cmd_embed(rt, embed_kb, embed_out, out);
    if (retrieve->parsed())
      return cmd_retrieve(rt, r_kb, r_vectors, r_queries, r_k, r_exclude_self, out);
    if (train->parsed())
      return cmd_train(rt, t_kb, t_vectors, t_out, t_trace, t_validation, t_steps, t_lr, out);
    if (answer->parsed()) return cmd_answer(rt, answer_flags, out, err);
    if (evaluate_cmd->parsed()) return cmd_evaluate(rt, eval_flags, out, err);
    if (sweep->parsed()) return cmd_sweep(rt, sweep_flags, out, err);
    err << app.help();
    return kExitRuntime;
  } catch (const CLI::ParseError& e) {
    err << "error: config: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace zebra::cli
