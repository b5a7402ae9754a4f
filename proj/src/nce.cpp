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

#include "zebra/nce.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace zebra {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log(1 + exp(t)); t may be -inf.
double softplus(double t) {
  if (t == kNegInf) return 0.0;
  return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
}

// 1 / (1 + exp(-t))
double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  double e = std::exp(t);
  return e / (1.0 + e);
}

}  // namespace

double log_sum_exp(std::span<const double> xs) {
  if (xs.empty()) return kNegInf;
  if (xs.size() == 1) return xs[0];
  double m = *std::max_element(xs.begin(), xs.end());
  if (m == kNegInf) return kNegInf;
  double s = 0.0;
  for (double x : xs) s += std::exp(x - m);
  return m + std::log(s);
}

double nce_loss_and_grad(std::span<const double> pos_sims, std::span<const double> neg_sims,
                         std::span<double> d_pos, std::span<double> d_neg) {
  if (pos_sims.empty()) throw ValidationError("nce loss needs at least one positive");
  const bool want_grad = !d_pos.empty() || !d_neg.empty();
  if (want_grad && (d_pos.size() != pos_sims.size() || d_neg.size() != neg_sims.size()))
    throw DimensionError("gradient buffers do not match similarity counts");

  const double log_neg = log_sum_exp(neg_sims);
  // log r_i where r_i = exp(s_i) / (exp(s_i) + N) = sigmoid(s_i - log N).
  std::vector<double> log_ratio(pos_sims.size());
  for (std::size_t i = 0; i < pos_sims.size(); ++i)
    log_ratio[i] = -softplus(log_neg - pos_sims[i]);
  const double log_total = log_sum_exp(log_ratio);
  const double loss = -log_total;
  if (!want_grad) return loss;

  std::fill(d_neg.begin(), d_neg.end(), 0.0);
  for (std::size_t i = 0; i < pos_sims.size(); ++i) {
    const double share = std::exp(log_ratio[i] - log_total);  // r_i / S
    const double t = log_neg - pos_sims[i];
    d_pos[i] = -share * sigmoid(t);  // -(r_i / S)(1 - r_i)
    // d r_i / d n_j = -r_i exp(n_j) / (exp(s_i) + N)
    //              = -r_i exp(n_j - s_i + log r_i)
    for (std::size_t j = 0; j < neg_sims.size(); ++j)
      d_neg[j] += share * std::exp(neg_sims[j] - pos_sims[i] + log_ratio[i]);
  }
  return loss;
}

double nce_loss_from_sims(std::span<const double> pos_sims, std::span<const double> neg_sims) {
  return nce_loss_and_grad(pos_sims, neg_sims, {}, {});
}

double nce_loss(const EmbeddingVector& query, std::span<const EmbeddingVector> positives,
                std::span<const EmbeddingVector> negatives) {
  if (positives.empty()) throw ValidationError("nce loss needs at least one positive");
  std::vector<double> pos(positives.size()), neg(negatives.size());
  for (std::size_t i = 0; i < positives.size(); ++i) pos[i] = dot(query, positives[i]);
  for (std::size_t j = 0; j < negatives.size(); ++j) neg[j] = dot(query, negatives[j]);
  return nce_loss_from_sims(pos, neg);
}

}  // namespace zebra
