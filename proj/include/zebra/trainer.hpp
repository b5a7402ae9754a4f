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

// Contrastive training of a linear retrieval adapter over frozen base
// embeddings. Positives share the query's topic; negatives are the other
// batch queries' positives.

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "zebra/adapter.hpp"
#include "zebra/embedding.hpp"
#include "zebra/kb.hpp"
#include "zebra/kernels.hpp"

namespace zebra {

/// Raised by mine_positives for an example without a topic.
class UntopicedQuery : public Error {
 public:
  explicit UntopicedQuery(const std::string& id) : Error("untopiced query \"" + id + "\"") {}
};

struct TrainConfig {
  double learning_rate = 1e-5;
  long max_steps = 500;
  std::size_t positive_cap = 64;
  std::size_t negative_cap = 200;
  std::size_t batch_size = 8;
  std::uint64_t seed = 0;
  /// Augmented variants generated per mined positive (0 disables).
  std::size_t augment_variants = 0;
  /// Output dimension of the adapter; 0 keeps the base dimension.
  std::size_t d_out = 0;
  double init_sigma = 0.01;
  long validation_every = 50;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  /// Throws ValidationError when a field is out of range.
  void validate() const;
};

TrainConfig train_config_from_json(std::string_view text, TrainConfig base = {});

/// Topic key used for positive matching: trimmed and ASCII case-folded.
std::string normalize_topic(std::string_view topic);

/// Ids of other examples sharing `query_id`'s topic, in set order. More than
/// `cap` peers are reduced to a seeded uniform sample of size `cap`.
std::vector<std::string> mine_positives(const ExampleSet& set, const std::string& query_id,
                                        std::size_t cap, std::uint64_t seed);

/// Up to `n_variants` distinct passages, each one seeded edit of the choice
/// list (a reordering, or removal of non-gold choices leaving at least two),
/// serialized like a query. The original ordering is never returned.
std::vector<std::string> augment_passages(const Example& ex, std::uint64_t seed,
                                          std::size_t n_variants);

struct BatchEntry {
  std::string query_id;
  std::vector<std::string> positive_ids;
  std::vector<std::string> negative_ids;
};

struct TrainingBatch {
  std::vector<BatchEntry> entries;
  /// Passage text for augmented ids ("<source>#aug<n>").
  std::map<std::string, std::string> augmented_text;
};

/// Untopiced queries are left out; if none remain the batch is unusable.
TrainingBatch assemble_batch(std::span<const std::string> query_ids, const ExampleSet& set,
                             const TrainConfig& cfg, std::uint64_t seed);

using BaseEmbeddings = std::unordered_map<std::string, EmbeddingVector>;

BaseEmbeddings base_from_rows(std::span<const IdVector> rows);

/// Binds a batch to vectors. Entries without positives are dropped.
/// Augmented passages are embedded with `augment_provider` (required if the
/// batch has any) and memoized in `augment_cache`.
std::vector<kernels::ObjectiveItem> resolve_batch(const TrainingBatch& batch,
                                                  const BaseEmbeddings& base,
                                                  EmbeddingProvider* augment_provider,
                                                  BaseEmbeddings& augment_cache);

struct TraceRow {
  long step = 0;
  double loss = 0.0;
  double lr = 0.0;
};

struct TrainResult {
  AdapterWeights weights;
  std::vector<TraceRow> trace;
  /// (step, mean validation loss) pairs; empty without a validation set.
  std::vector<std::pair<long, double>> validation;
  long best_step = 0;
};

struct TrainInputs {
  const ExampleSet* train = nullptr;
  const BaseEmbeddings* base = nullptr;
  /// Needed only when cfg.augment_variants > 0.
  EmbeddingProvider* augment_provider = nullptr;
  /// Held-out split for best-model selection.
  const ExampleSet* validation = nullptr;
};

/// RAdam with linear decay to zero over cfg.max_steps. Throws
/// DivergenceError with the step on a non-finite loss or gradient.
TrainResult train_adapter(const TrainConfig& cfg, const TrainInputs& in);

/// Ids of examples that have at least one topic-mate.
std::vector<std::string> trainable_queries(const ExampleSet& set);

/// Mean loss of `w` over the given batches.
double mean_batch_loss(const AdapterWeights& w, std::span<const TrainingBatch> batches,
                       const BaseEmbeddings& base, EmbeddingProvider* augment_provider);

/// Fraction of topiced examples (with a topic-mate) whose top-1 neighbour,
/// excluding itself, shares its topic, under adapted embeddings.
double topic_recall_at_1(const ExampleSet& set, const BaseEmbeddings& base,
                         const AdapterWeights& w);

void write_trace_csv(std::ostream& out, std::span<const TraceRow> trace);

}  // namespace zebra
