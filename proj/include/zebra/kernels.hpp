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

// Data-parallel inner loops. Every kernel has a plain serial reference that
// the tests and the benchmark compare against; the OpenMP variants are what
// the library calls. Results never depend on the thread count: reductions
// always run in item order.

#pragma once

#include <span>
#include <vector>

#include "zebra/adapter.hpp"

namespace zebra::kernels {

/// out[r] = dot(matrix row r, query); matrix is row-major with `dim` columns.
void dot_scores_serial(std::span<const double> matrix, std::size_t dim,
                       std::span<const double> query, std::span<double> out);
void dot_scores_omp(std::span<const double> matrix, std::size_t dim,
                    std::span<const double> query, std::span<double> out);

/// One query of a contrastive batch, as base (pre-adapter) vectors.
struct ObjectiveItem {
  std::span<const double> query;
  std::vector<std::span<const double>> positives;
  std::vector<std::span<const double>> negatives;
};

struct BatchObjective {
  double loss = 0.0;          // mean per-item loss
  std::vector<double> grad;   // d loss / d M, row-major like the adapter
};

/// Mean NCE loss of the batch under adapter M and, if `want_grad`, its
/// analytic gradient with respect to M. Items without positives are an error.
BatchObjective batch_objective_serial(const AdapterWeights& m,
                                      std::span<const ObjectiveItem> items, bool want_grad);
BatchObjective batch_objective_omp(const AdapterWeights& m, std::span<const ObjectiveItem> items,
                                   bool want_grad);

int max_threads();

}  // namespace zebra::kernels
