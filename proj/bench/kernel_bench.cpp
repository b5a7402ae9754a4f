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

// Serial reference vs OpenMP for the two hot kernels.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "zebra/adapter.hpp"
#include "zebra/kernels.hpp"

namespace {

using namespace zebra;

std::vector<double> random_values(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(gen);
  return v;
}

template <auto Kernel>
void BM_DotScores(benchmark::State& state) {
  const auto rows = static_cast<std::size_t>(state.range(0));
  const std::size_t dim = 768;
  auto matrix = random_values(rows * dim, 1);
  auto query = random_values(dim, 2);
  std::vector<double> out(rows);
  for (auto _ : state) {
    Kernel(matrix, dim, query, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(rows));
}

struct Batch {
  std::vector<std::vector<double>> storage;
  std::vector<kernels::ObjectiveItem> items;
};

Batch make_batch(std::size_t dim, std::size_t n_items, std::size_t n_pos, std::size_t n_neg) {
  Batch b;
  b.storage.reserve(n_items * (1 + n_pos + n_neg));
  std::uint64_t seed = 10;
  auto fresh = [&]() -> std::span<const double> {
    b.storage.push_back(random_values(dim, seed++));
    return b.storage.back();
  };
  for (std::size_t i = 0; i < n_items; ++i) {
    kernels::ObjectiveItem it;
    it.query = fresh();
    for (std::size_t p = 0; p < n_pos; ++p) it.positives.push_back(fresh());
    for (std::size_t n = 0; n < n_neg; ++n) it.negatives.push_back(fresh());
    b.items.push_back(std::move(it));
  }
  return b;
}

template <auto Kernel>
void BM_BatchObjective(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  auto batch = make_batch(dim, 8, 4, 32);
  auto w = AdapterWeights::perturbed_identity(dim, dim, 0.01, 3);
  for (auto _ : state) {
    auto r = Kernel(w, batch.items, true);
    benchmark::DoNotOptimize(r.loss);
  }
}

}  // namespace

BENCHMARK(BM_DotScores<kernels::dot_scores_serial>)->Arg(1000)->Arg(20000);
BENCHMARK(BM_DotScores<kernels::dot_scores_omp>)->Arg(1000)->Arg(20000);
BENCHMARK(BM_BatchObjective<kernels::batch_objective_serial>)->Arg(32)->Arg(128);
BENCHMARK(BM_BatchObjective<kernels::batch_objective_omp>)->Arg(32)->Arg(128);

BENCHMARK_MAIN();
