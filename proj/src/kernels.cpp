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

#include "zebra/kernels.hpp"

#include <omp.h>

#include "zebra/nce.hpp"

namespace zebra::kernels {

namespace {

void check_scores_shape(std::span<const double> matrix, std::size_t dim,
                        std::span<const double> query, std::span<double> out) {
  if (query.size() != dim || matrix.size() != dim * out.size())
    throw DimensionError("dot_scores: shape mismatch");
}

void check_items(const AdapterWeights& m, std::span<const ObjectiveItem> items) {
  if (items.empty()) throw Error("empty contrastive batch");
  for (const auto& it : items) {
    if (it.positives.empty()) throw Error("batch item without positives");
    auto ok = [&](std::span<const double> v) { return v.size() == m.d_in; };
    bool dims = ok(it.query);
    for (auto p : it.positives) dims = dims && ok(p);
    for (auto p : it.negatives) dims = dims && ok(p);
    if (!dims) throw DimensionError("batch vector dim differs from adapter d_in");
  }
}

// Forward pass for one item: adapted query, adapted passages, similarities.
struct Forward {
  std::vector<double> u;
  std::vector<std::vector<double>> v;  // positives then negatives
  std::vector<double> pos_sims, neg_sims;
};

Forward forward(const AdapterWeights& m, const ObjectiveItem& it) {
  Forward f;
  f.u.resize(m.d_out);
  m.apply(it.query, f.u);
  auto adapt = [&](std::span<const double> b, std::vector<double>& sims) {
    std::vector<double> v(m.d_out);
    m.apply(b, v);
    double s = 0.0;
    for (std::size_t r = 0; r < m.d_out; ++r) s += f.u[r] * v[r];
    sims.push_back(s);
    f.v.push_back(std::move(v));
  };
  for (auto p : it.positives) adapt(p, f.pos_sims);
  for (auto p : it.negatives) adapt(p, f.neg_sims);
  return f;
}

}  // namespace

void dot_scores_serial(std::span<const double> matrix, std::size_t dim,
                       std::span<const double> query, std::span<double> out) {
  check_scores_shape(matrix, dim, query, out);
  for (std::size_t r = 0; r < out.size(); ++r) {
    double s = 0.0;
    for (std::size_t c = 0; c < dim; ++c) s += matrix[r * dim + c] * query[c];
    out[r] = s;
  }
}

void dot_scores_omp(std::span<const double> matrix, std::size_t dim,
                    std::span<const double> query, std::span<double> out) {
  check_scores_shape(matrix, dim, query, out);
  const auto n = static_cast<std::ptrdiff_t>(out.size());
  const double* mat = matrix.data();
  const double* q = query.data();
  double* o = out.data();
#pragma omp parallel for schedule(static) if (n * static_cast<std::ptrdiff_t>(dim) > 32768)
  for (std::ptrdiff_t r = 0; r < n; ++r) {
    const double* row = mat + r * static_cast<std::ptrdiff_t>(dim);
    double s = 0.0;
    for (std::size_t c = 0; c < dim; ++c) s += row[c] * q[c];
    o[r] = s;
  }
}

BatchObjective batch_objective_serial(const AdapterWeights& m,
                                      std::span<const ObjectiveItem> items, bool want_grad) {
  check_items(m, items);
  BatchObjective out;
  if (want_grad) out.grad.assign(m.matrix.size(), 0.0);
  for (const auto& it : items) {
    Forward f = forward(m, it);
    std::vector<double> g_pos(f.pos_sims.size()), g_neg(f.neg_sims.size());
    out.loss += nce_loss_and_grad(f.pos_sims, f.neg_sims, g_pos, g_neg);
    if (!want_grad) continue;
    // d s_p / d M = v_p b_q^T + u b_p^T
    auto accumulate = [&](double g, const std::vector<double>& v, std::span<const double> b) {
      for (std::size_t r = 0; r < m.d_out; ++r)
        for (std::size_t c = 0; c < m.d_in; ++c)
          out.grad[r * m.d_in + c] += g * (v[r] * it.query[c] + f.u[r] * b[c]);
    };
    for (std::size_t i = 0; i < it.positives.size(); ++i)
      accumulate(g_pos[i], f.v[i], it.positives[i]);
    for (std::size_t j = 0; j < it.negatives.size(); ++j)
      accumulate(g_neg[j], f.v[it.positives.size() + j], it.negatives[j]);
  }
  const double inv_n = 1.0 / static_cast<double>(items.size());
  out.loss *= inv_n;
  for (double& g : out.grad) g *= inv_n;
  return out;
}

BatchObjective batch_objective_omp(const AdapterWeights& m, std::span<const ObjectiveItem> items,
                                   bool want_grad) {
  check_items(m, items);
  const auto n = static_cast<std::ptrdiff_t>(items.size());
  std::vector<double> losses(items.size());
  // Per item the gradient is rank two: a b_q^T + u c^T with
  // a = sum_p g_p v_p and c = sum_p g_p b_p.
  std::vector<std::vector<double>> a(items.size()), u(items.size()), c(items.size());

#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto& it = items[static_cast<std::size_t>(i)];
    Forward f = forward(m, it);
    std::vector<double> g_pos(f.pos_sims.size()), g_neg(f.neg_sims.size());
    losses[i] = nce_loss_and_grad(f.pos_sims, f.neg_sims, g_pos, g_neg);
    if (!want_grad) continue;
    std::vector<double> ai(m.d_out, 0.0), ci(m.d_in, 0.0);
    auto add = [&](double g, const std::vector<double>& v, std::span<const double> b) {
      for (std::size_t r = 0; r < m.d_out; ++r) ai[r] += g * v[r];
      for (std::size_t k = 0; k < m.d_in; ++k) ci[k] += g * b[k];
    };
    for (std::size_t p = 0; p < it.positives.size(); ++p) add(g_pos[p], f.v[p], it.positives[p]);
    for (std::size_t q = 0; q < it.negatives.size(); ++q)
      add(g_neg[q], f.v[it.positives.size() + q], it.negatives[q]);
    a[i] = std::move(ai);
    c[i] = std::move(ci);
    u[i] = std::move(f.u);
  }

  BatchObjective out;
  const double inv_n = 1.0 / static_cast<double>(items.size());
  for (double l : losses) out.loss += l;
  out.loss *= inv_n;
  if (!want_grad) return out;

  out.grad.assign(m.matrix.size(), 0.0);
  const auto rows = static_cast<std::ptrdiff_t>(m.d_out);
  double* grad = out.grad.data();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t r = 0; r < rows; ++r) {
    double* row = grad + r * static_cast<std::ptrdiff_t>(m.d_in);
    for (std::size_t i = 0; i < items.size(); ++i) {
      const double ar = a[i][r], ur = u[i][r];
      const auto q = items[i].query;
      for (std::size_t k = 0; k < m.d_in; ++k) row[k] += ar * q[k] + ur * c[i][k];
    }
    for (std::size_t k = 0; k < m.d_in; ++k) row[k] *= inv_n;
  }
  return out;
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace zebra::kernels
