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

#include "zebra/trainer.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <ostream>
#include <set>
#include <unordered_set>

#include "json.hpp"
#include "zebra/index.hpp"
#include "zebra/rng.hpp"
#include "zebra/text.hpp"

namespace zebra {

void TrainConfig::validate() const {
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate))
    throw ValidationError("learning_rate must be positive");
  if (max_steps < 0) throw ValidationError("max_steps must be non-negative");
  if (positive_cap < 1 || negative_cap < 1) throw ValidationError("caps must be at least 1");
  if (batch_size < 2) throw ValidationError("batch_size must be at least 2");
  if (validation_every < 1) throw ValidationError("validation_every must be positive");
  if (init_sigma < 0.0) throw ValidationError("init_sigma must be non-negative");
}

TrainConfig train_config_from_json(std::string_view text, TrainConfig cfg) {
  auto j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw ParseError("train config: malformed JSON");
  try {
    cfg.learning_rate = j.value("learning_rate", cfg.learning_rate);
    cfg.max_steps = j.value("max_steps", cfg.max_steps);
    cfg.positive_cap = j.value("positive_cap", cfg.positive_cap);
    cfg.negative_cap = j.value("negative_cap", cfg.negative_cap);
    cfg.batch_size = j.value("batch_size", cfg.batch_size);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.augment_variants = j.value("augment_variants", cfg.augment_variants);
    cfg.d_out = j.value("d_out", cfg.d_out);
    cfg.init_sigma = j.value("init_sigma", cfg.init_sigma);
    cfg.validation_every = j.value("validation_every", cfg.validation_every);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("train config: ") + e.what());
  }
  return cfg;
}

std::string normalize_topic(std::string_view topic) { return ascii_lower(trim(topic)); }

namespace {

std::optional<std::string> topic_key(const Example& ex) {
  if (!ex.topic) return std::nullopt;
  auto key = normalize_topic(*ex.topic);
  if (key.empty()) return std::nullopt;
  return key;
}

std::string source_of(const std::string& passage_id) {
  auto pos = passage_id.rfind("#aug");
  return pos == std::string::npos ? passage_id : passage_id.substr(0, pos);
}

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

std::vector<std::string> mine_positives(const ExampleSet& set, const std::string& query_id,
                                        std::size_t cap, std::uint64_t seed) {
  if (cap < 1) throw ValidationError("positive cap must be at least 1");
  const Example& q = set.at(query_id);
  auto key = topic_key(q);
  if (!key) throw UntopicedQuery(query_id);
  std::vector<std::string> peers;
  for (const auto& ex : set) {
    if (ex.id == query_id) continue;
    auto k = topic_key(ex);
    if (k && *k == *key) peers.push_back(ex.id);
  }
  if (peers.size() <= cap) return peers;
  Rng rng(mix_seed(seed, "positives:" + query_id));
  std::vector<std::string> out;
  for (auto i : sample_indices(peers.size(), cap, rng)) out.push_back(peers[i]);
  return out;
}

std::vector<std::string> augment_passages(const Example& ex, std::uint64_t seed,
                                          std::size_t n_variants) {
  if (n_variants == 0) return {};
  const std::size_t n = ex.choices.size();
  std::optional<std::size_t> gold;
  if (ex.answer_label) gold = index_for_label(*ex.answer_label);
  std::vector<std::size_t> removable;
  for (std::size_t i = 0; i < n; ++i)
    if (i != gold) removable.push_back(i);
  const std::size_t max_remove = n >= 2 ? std::min(n - 2, removable.size()) : 0;

  const std::string original = serialize_example(ex);
  std::vector<std::string> variants;
  std::unordered_set<std::string> seen{original};
  auto render = [&](const std::vector<std::size_t>& order) {
    std::string out = ex.question;
    for (auto i : order) {
      out += ' ';
      out += kSepToken;
      out += ' ';
      out += ex.choices[i].text;
    }
    if (seen.insert(out).second) variants.push_back(std::move(out));
  };
  auto keep_all_but = [&](const std::vector<std::size_t>& removed) {
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < n; ++i)
      if (std::find(removed.begin(), removed.end(), i) == removed.end()) kept.push_back(i);
    return kept;
  };

  Rng rng(mix_seed(seed, "augment:" + ex.id));
  if (n <= 7) {
    // Small choice lists: enumerate every attainable edit, then pick a seeded
    // subset, so asking for more than exist returns all of them.
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    while (std::next_permutation(perm.begin(), perm.end())) render(perm);
    for (std::uint32_t mask = 1; mask < (1u << removable.size()); ++mask) {
      auto count = static_cast<std::size_t>(std::popcount(mask));
      if (count > max_remove) continue;
      std::vector<std::size_t> removed;
      for (std::size_t b = 0; b < removable.size(); ++b)
        if (mask & (1u << b)) removed.push_back(removable[b]);
      render(keep_all_but(removed));
    }
    rng.shuffle(variants);
    if (variants.size() > n_variants) variants.resize(n_variants);
    return variants;
  }

  const std::size_t attempts = 100 * n_variants + 100;
  for (std::size_t a = 0; a < attempts && variants.size() < n_variants; ++a) {
    if (max_remove == 0 || rng.below(2) == 0) {
      std::vector<std::size_t> perm(n);
      std::iota(perm.begin(), perm.end(), std::size_t{0});
      rng.shuffle(perm);
      render(perm);
    } else {
      std::size_t count = 1 + rng.below(max_remove);
      std::vector<std::size_t> removed;
      for (auto i : sample_indices(removable.size(), count, rng)) removed.push_back(removable[i]);
      render(keep_all_but(removed));
    }
  }
  return variants;
}

TrainingBatch assemble_batch(std::span<const std::string> query_ids, const ExampleSet& set,
                             const TrainConfig& cfg, std::uint64_t seed) {
  if (query_ids.size() < 2)
    throw ValidationError("a batch needs at least 2 queries for in-batch negatives");
  TrainingBatch batch;
  std::vector<std::string> topics;
  for (const auto& qid : query_ids) {
    std::vector<std::string> mined;
    try {
      mined = mine_positives(set, qid, cfg.positive_cap, mix_seed(seed, "mine"));
    } catch (const UntopicedQuery&) {
      continue;
    }
    BatchEntry e{qid, {}, {}};
    for (const auto& p : mined) {
      e.positive_ids.push_back(p);
      auto variants = augment_passages(set.at(p), cfg.seed, cfg.augment_variants);
      for (std::size_t v = 0; v < variants.size(); ++v) {
        auto id = p + "#aug" + std::to_string(v);
        batch.augmented_text.emplace(id, std::move(variants[v]));
        e.positive_ids.push_back(std::move(id));
      }
    }
    topics.push_back(*topic_key(set.at(qid)));
    batch.entries.push_back(std::move(e));
  }
  if (batch.entries.empty()) throw ValidationError("unusable batch: every query is untopiced");

  for (std::size_t i = 0; i < batch.entries.size(); ++i) {
    auto& e = batch.entries[i];
    std::unordered_set<std::string> excluded(e.positive_ids.begin(), e.positive_ids.end());
    excluded.insert(e.query_id);
    std::vector<std::string> pool;
    for (std::size_t j = 0; j < batch.entries.size(); ++j) {
      if (j == i) continue;
      for (const auto& p : batch.entries[j].positive_ids) {
        if (excluded.contains(p)) continue;
        auto src = source_of(p);
        auto src_topic = topic_key(set.at(src));
        if (src == e.query_id || (src_topic && *src_topic == topics[i])) continue;
        excluded.insert(p);
        pool.push_back(p);
      }
    }
    if (pool.size() > cfg.negative_cap) {
      Rng rng(mix_seed(seed, "negatives:" + e.query_id));
      std::vector<std::string> kept;
      for (auto k : sample_indices(pool.size(), cfg.negative_cap, rng))
        kept.push_back(std::move(pool[k]));
      pool = std::move(kept);
    }
    e.negative_ids = std::move(pool);
  }
  return batch;
}

BaseEmbeddings base_from_rows(std::span<const IdVector> rows) {
  BaseEmbeddings base;
  for (const auto& r : rows) {
    if (!base.emplace(r.id, r.vector).second)
      throw ValidationError("duplicate vector id \"" + r.id + "\"");
  }
  return base;
}

std::vector<kernels::ObjectiveItem> resolve_batch(const TrainingBatch& batch,
                                                  const BaseEmbeddings& base,
                                                  EmbeddingProvider* augment_provider,
                                                  BaseEmbeddings& augment_cache) {
  std::vector<std::string> missing;
  for (const auto& [id, text] : batch.augmented_text)
    if (!augment_cache.contains(id)) missing.push_back(id);
  if (!missing.empty()) {
    if (!augment_provider)
      throw Error("augmented passages require an embedding provider");
    std::vector<std::string> texts;
    for (const auto& id : missing) texts.push_back(batch.augmented_text.at(id));
    auto vecs = embed_texts(*augment_provider, texts);
    for (std::size_t i = 0; i < missing.size(); ++i) augment_cache.emplace(missing[i], vecs[i]);
  }

  auto lookup = [&](const std::string& id) -> std::span<const double> {
    if (auto it = base.find(id); it != base.end()) return it->second.values();
    if (auto it = augment_cache.find(id); it != augment_cache.end()) return it->second.values();
    throw Error("no base embedding for id \"" + id + "\"");
  };

  std::vector<kernels::ObjectiveItem> items;
  for (const auto& e : batch.entries) {
    if (e.positive_ids.empty()) continue;
    kernels::ObjectiveItem it;
    it.query = lookup(e.query_id);
    for (const auto& p : e.positive_ids) it.positives.push_back(lookup(p));
    for (const auto& n : e.negative_ids) it.negatives.push_back(lookup(n));
    items.push_back(std::move(it));
  }
  return items;
}

std::vector<std::string> trainable_queries(const ExampleSet& set) {
  std::unordered_map<std::string, std::size_t> counts;
  for (const auto& ex : set)
    if (auto k = topic_key(ex)) ++counts[*k];
  std::vector<std::string> out;
  for (const auto& ex : set) {
    auto k = topic_key(ex);
    if (k && counts[*k] >= 2) out.push_back(ex.id);
  }
  return out;
}

double mean_batch_loss(const AdapterWeights& w, std::span<const TrainingBatch> batches,
                       const BaseEmbeddings& base, EmbeddingProvider* augment_provider) {
  if (batches.empty()) throw Error("no batches to evaluate");
  BaseEmbeddings cache;
  double total = 0.0;
  for (const auto& b : batches) {
    auto items = resolve_batch(b, base, augment_provider, cache);
    total += kernels::batch_objective_omp(w, items, false).loss;
  }
  return total / static_cast<double>(batches.size());
}

namespace {

std::vector<TrainingBatch> fixed_batches(const ExampleSet& set, const TrainConfig& cfg) {
  auto ids = trainable_queries(set);
  if (ids.size() < 2) throw ValidationError("validation split has fewer than 2 trainable queries");
  std::vector<TrainingBatch> out;
  for (std::size_t start = 0; start < ids.size(); start += cfg.batch_size) {
    std::size_t end = std::min(ids.size(), start + cfg.batch_size);
    if (ids.size() - end == 1) end = ids.size();  // never leave a singleton batch
    std::span<const std::string> chunk(ids.data() + start, end - start);
    out.push_back(assemble_batch(chunk, set, cfg, mix_seed(cfg.seed, "validation")));
    if (end == ids.size()) break;
  }
  return out;
}

struct RAdamState {
  std::vector<double> m, v;
};

void radam_step(const TrainConfig& cfg, double lr, long t, std::span<const double> grad,
                RAdamState& st, std::vector<double>& params) {
  const double b1 = cfg.beta1, b2 = cfg.beta2;
  const double b1t = std::pow(b1, static_cast<double>(t));
  const double b2t = std::pow(b2, static_cast<double>(t));
  const double rho_inf = 2.0 / (1.0 - b2) - 1.0;
  const double rho_t = rho_inf - 2.0 * static_cast<double>(t) * b2t / (1.0 - b2t);
  double rect = 0.0;
  const bool adaptive = rho_t > 5.0;
  if (adaptive)
    rect = std::sqrt((rho_t - 4.0) * (rho_t - 2.0) * rho_inf /
                     ((rho_inf - 4.0) * (rho_inf - 2.0) * rho_t));
  for (std::size_t i = 0; i < params.size(); ++i) {
    st.m[i] = b1 * st.m[i] + (1.0 - b1) * grad[i];
    st.v[i] = b2 * st.v[i] + (1.0 - b2) * grad[i] * grad[i];
    const double m_hat = st.m[i] / (1.0 - b1t);
    if (adaptive) {
      const double denom = std::sqrt(st.v[i]) / std::sqrt(1.0 - b2t) + cfg.epsilon;
      params[i] -= lr * rect * m_hat / denom;
    } else {
      params[i] -= lr * m_hat;
    }
  }
}

}  // namespace

TrainResult train_adapter(const TrainConfig& cfg, const TrainInputs& in) {
  cfg.validate();
  if (!in.train || !in.base) throw Error("train_adapter: missing training set or embeddings");
  if (in.base->empty()) throw Error("train_adapter: no base embeddings");
  const std::size_t d_in = in.base->begin()->second.dim();
  for (const auto& [id, v] : *in.base)
    if (v.dim() != d_in) throw DimensionError("base embedding \"" + id + "\" has inconsistent dim");
  const std::size_t d_out = cfg.d_out ? cfg.d_out : d_in;

  TrainResult result;
  result.weights = AdapterWeights::perturbed_identity(d_in, d_out, cfg.init_sigma, cfg.seed);
  if (cfg.max_steps == 0) return result;

  const auto eligible = trainable_queries(*in.train);
  if (eligible.size() < 2) throw ValidationError("fewer than 2 queries have topic-mates");

  std::vector<TrainingBatch> val_batches;
  AdapterWeights best = result.weights;
  double best_val = 0.0;
  if (in.validation) {
    val_batches = fixed_batches(*in.validation, cfg);
    best_val = mean_batch_loss(best, val_batches, *in.base, in.augment_provider);
    result.validation.emplace_back(0, best_val);
  }

  AdapterWeights& w = result.weights;
  RAdamState st{std::vector<double>(w.matrix.size(), 0.0),
                std::vector<double>(w.matrix.size(), 0.0)};
  BaseEmbeddings augment_cache;

  for (long step = 1; step <= cfg.max_steps; ++step) {
    const auto tag = std::to_string(step);
    Rng pick(mix_seed(cfg.seed, "batch:" + tag));
    std::vector<std::string> ids;
    for (auto i : sample_indices(eligible.size(), cfg.batch_size, pick)) ids.push_back(eligible[i]);
    auto batch = assemble_batch(ids, *in.train, cfg, mix_seed(cfg.seed, "step:" + tag));
    auto items = resolve_batch(batch, *in.base, in.augment_provider, augment_cache);
    auto obj = kernels::batch_objective_omp(w, items, true);
    if (!std::isfinite(obj.loss) || !all_finite(obj.grad))
      throw DivergenceError("non-finite loss or gradient at step " + tag, step);

    const double lr = cfg.learning_rate *
                      (1.0 - static_cast<double>(step - 1) / static_cast<double>(cfg.max_steps));
    radam_step(cfg, lr, step, obj.grad, st, w.matrix);
    if (!all_finite(w.matrix))
      throw DivergenceError("non-finite adapter weights at step " + tag, step);
    result.trace.push_back({step, obj.loss, lr});

    if (in.validation && (step % cfg.validation_every == 0 || step == cfg.max_steps)) {
      double val = mean_batch_loss(w, val_batches, *in.base, in.augment_provider);
      result.validation.emplace_back(step, val);
      if (val < best_val) {
        best_val = val;
        best = w;
        result.best_step = step;
      }
    }
  }
  if (in.validation) result.weights = best;
  else result.best_step = cfg.max_steps;
  return result;
}

double topic_recall_at_1(const ExampleSet& set, const BaseEmbeddings& base,
                         const AdapterWeights& w) {
  std::vector<std::string> ids;
  std::vector<EmbeddingVector> adapted;
  for (const auto& ex : set) {
    auto it = base.find(ex.id);
    if (it == base.end()) throw Error("no base embedding for id \"" + ex.id + "\"");
    ids.push_back(ex.id);
    adapted.push_back(w.apply(it->second));
  }
  auto index = build_index(ids, adapted);
  auto queries = trainable_queries(set);
  if (queries.empty()) return 0.0;
  std::size_t hits = 0;
  for (const auto& qid : queries) {
    auto pos = static_cast<std::size_t>(index.position(qid));
    auto top = search(index, adapted[pos], 1, {qid});
    if (!top.empty() && normalize_topic(set.at(top[0].example_id).topic.value_or("")) ==
                            normalize_topic(*set.at(qid).topic))
      ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(queries.size());
}

void write_trace_csv(std::ostream& out, std::span<const TraceRow> trace) {
  out << "step,loss,lr\n";
  for (const auto& r : trace)
    out << r.step << ',' << format_double(r.loss) << ',' << format_double(r.lr) << '\n';
}

}  // namespace zebra
