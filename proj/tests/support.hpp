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

// Shared fixtures and independent oracles for the unit and acceptance tests.
// Oracles here deliberately avoid the library's numerics.

#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "zebra/adapter.hpp"
#include "zebra/kb.hpp"
#include "zebra/kb_builder.hpp"
#include "zebra/knowledge.hpp"
#include "zebra/reasoning.hpp"

namespace zebra::testing {

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(ZEBRA_FIXTURE_DIR) / name;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("zebra_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline Example make_example(std::string id, std::string question, std::vector<std::string> choices,
                            std::optional<std::string> answer = std::nullopt,
                            std::vector<std::string> explanations = {},
                            std::optional<std::string> topic = std::nullopt) {
  Example ex;
  ex.id = std::move(id);
  ex.question = std::move(question);
  ex.choices = make_choices(choices);
  ex.answer_label = std::move(answer);
  ex.explanations = std::move(explanations);
  ex.topic = std::move(topic);
  return ex;
}

// --- golden prompt cases ---------------------------------------------------

inline Example golden_query_5() {
  return make_example("g5", "Where could you find a toilet that only friends can use?",
                      {"rest area", "school", "stadium", "apartment", "hospital"}, "D");
}

inline Example golden_query_3() {
  return make_example("g3", "What do you need to light a campfire?",
                      {"a match", "a bucket of water", "a snowball"}, "A");
}

inline Example golden_query_2() {
  return make_example("g2", "How do you keep a loaf of bread from going stale?",
                      {"store it in a sealed bag", "leave it open on the counter"}, "A");
}

inline std::vector<Example> golden_kb_examples() {
  return {
      make_example("x1", "Where would you put a plate after washing it?",
                   {"cupboard", "oven", "bathtub", "garden", "car"}, "A",
                   {"Clean plates are stored in a cupboard.", "Ovens are for cooking food."}),
      make_example("x2", "What keeps a room warm in winter?", {"a heater", "a fan", "an open window"},
                   "A", {"A heater produces warmth.", "A fan and an open window make rooms colder."}),
  };
}

inline KnowledgeList golden_knowledge() {
  return {"An apartment bathroom is only used by the residents and their guests.",
          "Public places like schools and stadiums have toilets anyone can use."};
}

struct GoldenCase {
  std::string name;
  ChatPrompt prompt;
};

inline std::vector<GoldenCase> golden_cases() {
  std::vector<GoldenCase> out;
  const auto kb = golden_kb_examples();
  for (const auto& ex : {golden_query_2(), golden_query_5()}) {
    const std::string n = std::to_string(ex.choices.size());
    const QueryView q = as_query(ex);
    out.push_back({"kg_" + n, build_kg_prompt(kb, q)});
    out.push_back({"qa_" + n, build_qa_prompt(q)});
    out.push_back({"ir_" + n, build_ir_prompt(q, golden_knowledge())});
    out.push_back({"silver_" + n, build_silver_prompt(ex.question, ex.choices, ex.answer_label)});
  }
  const auto g3 = golden_query_3();
  out.push_back({"silver_3", build_silver_prompt(g3.question, g3.choices, g3.answer_label)});
  return out;
}

inline std::filesystem::path golden_path(const std::string& name) {
  return fixture("golden/" + name + ".txt");
}

// --- numeric oracles --------------------------------------------------------

/// Direct evaluation of the multi-positive NCE loss with no stabilization.
inline double naive_nce(const std::vector<double>& pos, const std::vector<double>& neg) {
  double neg_sum = 0.0;
  for (double n : neg) neg_sum += std::exp(n);
  double total = 0.0;
  for (double s : pos) total += std::exp(s) / (std::exp(s) + neg_sum);
  return -std::log(total);
}

inline double naive_dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline std::vector<double> naive_apply(const AdapterWeights& w, const std::vector<double>& v) {
  std::vector<double> out(w.d_out, 0.0);
  for (std::size_t r = 0; r < w.d_out; ++r)
    for (std::size_t c = 0; c < w.d_in; ++c) out[r] += w.matrix[r * w.d_in + c] * v[c];
  return out;
}

struct NaiveItem {
  std::vector<double> query;
  std::vector<std::vector<double>> positives;
  std::vector<std::vector<double>> negatives;
};

/// Mean over items of the naive loss on adapted embeddings.
inline double naive_adapter_loss(const AdapterWeights& w, const std::vector<NaiveItem>& items) {
  double total = 0.0;
  for (const auto& it : items) {
    auto q = naive_apply(w, it.query);
    std::vector<double> ps, ns;
    for (const auto& p : it.positives) ps.push_back(naive_dot(q, naive_apply(w, p)));
    for (const auto& n : it.negatives) ns.push_back(naive_dot(q, naive_apply(w, n)));
    total += naive_nce(ps, ns);
  }
  return total / static_cast<double>(items.size());
}

/// Central finite-difference gradient of naive_adapter_loss.
inline std::vector<double> finite_diff_grad(AdapterWeights w, const std::vector<NaiveItem>& items,
                                            double h = 1e-5) {
  std::vector<double> g(w.matrix.size());
  for (std::size_t i = 0; i < w.matrix.size(); ++i) {
    const double keep = w.matrix[i];
    w.matrix[i] = keep + h;
    const double up = naive_adapter_loss(w, items);
    w.matrix[i] = keep - h;
    const double down = naive_adapter_loss(w, items);
    w.matrix[i] = keep;
    g[i] = (up - down) / (2.0 * h);
  }
  return g;
}

/// Full sort of every dot product; ties by position.
inline std::vector<std::pair<std::size_t, double>> brute_force_rank(
    const std::vector<std::vector<double>>& rows, const std::vector<double>& q) {
  std::vector<std::pair<std::size_t, double>> all;
  for (std::size_t i = 0; i < rows.size(); ++i) all.emplace_back(i, naive_dot(rows[i], q));
  std::stable_sort(all.begin(), all.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  return all;
}

inline std::vector<double> random_vector(std::mt19937_64& gen, std::size_t dim, double lo = -1.0,
                                         double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(dim);
  for (auto& x : v) x = u(gen);
  return v;
}

}  // namespace zebra::testing
