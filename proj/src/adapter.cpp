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

#include "zebra/adapter.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"

namespace zebra {

AdapterWeights AdapterWeights::identity(std::size_t d_in, std::size_t d_out) {
  if (d_in == 0 || d_out == 0) throw DimensionError("adapter dims must be positive");
  AdapterWeights w{d_in, d_out, std::vector<double>(d_in * d_out, 0.0)};
  for (std::size_t i = 0; i < std::min(d_in, d_out); ++i) w.at(i, i) = 1.0;
  return w;
}

AdapterWeights AdapterWeights::perturbed_identity(std::size_t d_in, std::size_t d_out,
                                                  double sigma, std::uint64_t seed) {
  auto w = identity(d_in, d_out);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, sigma);
  for (double& x : w.matrix) x += noise(rng);
  return w;
}

void AdapterWeights::apply(std::span<const double> in, std::span<double> out) const {
  if (in.size() != d_in || out.size() != d_out)
    throw DimensionError("adapter expects input dim " + std::to_string(d_in) + ", got " +
                         std::to_string(in.size()));
  for (std::size_t r = 0; r < d_out; ++r) {
    const double* row = matrix.data() + r * d_in;
    double s = 0.0;
    for (std::size_t c = 0; c < d_in; ++c) s += row[c] * in[c];
    out[r] = s;
  }
}

EmbeddingVector AdapterWeights::apply(const EmbeddingVector& v) const {
  std::vector<double> out(d_out);
  apply(v.values(), out);
  return EmbeddingVector(std::move(out));
}

std::string adapter_to_json(const AdapterWeights& w) {
  nlohmann::ordered_json j;
  j["d_in"] = w.d_in;
  j["d_out"] = w.d_out;
  auto& rows = j["matrix"] = nlohmann::ordered_json::array();
  for (std::size_t r = 0; r < w.d_out; ++r)
    rows.push_back(std::vector<double>(w.matrix.begin() + r * w.d_in,
                                       w.matrix.begin() + (r + 1) * w.d_in));
  return j.dump();
}

AdapterWeights adapter_from_json(std::string_view text) {
  auto j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw ParseError("adapter: malformed JSON");
  AdapterWeights w;
  try {
    w.d_in = j.at("d_in").get<std::size_t>();
    w.d_out = j.at("d_out").get<std::size_t>();
    const auto& rows = j.at("matrix");
    if (!rows.is_array() || rows.size() != w.d_out)
      throw ParseError("adapter: matrix must have d_out rows");
    for (const auto& row : rows) {
      auto values = row.get<std::vector<double>>();
      if (values.size() != w.d_in) throw ParseError("adapter: row length differs from d_in");
      w.matrix.insert(w.matrix.end(), values.begin(), values.end());
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("adapter: ") + e.what());
  }
  if (w.d_in == 0 || w.d_out == 0) throw ParseError("adapter: dims must be positive");
  for (double x : w.matrix)
    if (!std::isfinite(x)) throw ParseError("adapter: non-finite weight");
  return w;
}

AdapterWeights load_adapter(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return adapter_from_json(ss.str());
}

void save_adapter(const std::filesystem::path& path, const AdapterWeights& w) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << adapter_to_json(w) << '\n';
}

}  // namespace zebra
