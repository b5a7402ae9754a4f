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

// Multi-label noise contrastive estimation over dot-product similarities.
//
//   loss(q) = -log sum_{p+} exp(s+) / (exp(s+) + sum_{p-} exp(s-))
//
// Each positive gets its own denominator (its own exp plus every negative),
// and the per-positive ratios are summed, so with several positives the loss
// can go below zero. Everything is evaluated in log space; similarities of
// several hundred in magnitude stay finite.

#pragma once

#include <span>

#include "zebra/embedding.hpp"

namespace zebra {

double log_sum_exp(std::span<const double> xs);

/// Loss from precomputed similarities. Throws Error on an empty positive list.
double nce_loss_from_sims(std::span<const double> pos_sims, std::span<const double> neg_sims);

/// Same as nce_loss_from_sims, also writing d loss / d sim into `d_pos` and
/// `d_neg` (sized like the inputs).
double nce_loss_and_grad(std::span<const double> pos_sims, std::span<const double> neg_sims,
                         std::span<double> d_pos, std::span<double> d_neg);

/// Loss with sim = dot product. Throws on empty positives or dim mismatch.
double nce_loss(const EmbeddingVector& query, std::span<const EmbeddingVector> positives,
                std::span<const EmbeddingVector> negatives);

}  // namespace zebra
