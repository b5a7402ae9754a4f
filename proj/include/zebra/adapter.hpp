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

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "zebra/embedding.hpp"

namespace zebra {

/// Linear map M (d_out x d_in, row-major) applied to frozen base embeddings.
/// Adapted similarity is (M b_q) . (M b_p).
struct AdapterWeights {
  std::size_t d_in = 0;
  std::size_t d_out = 0;
  std::vector<double> matrix;

  static AdapterWeights identity(std::size_t d_in, std::size_t d_out);
  /// Identity plus N(0, sigma^2) noise drawn from `seed`.
  static AdapterWeights perturbed_identity(std::size_t d_in, std::size_t d_out, double sigma,
                                           std::uint64_t seed);

  double& at(std::size_t r, std::size_t c) { return matrix[r * d_in + c]; }
  double at(std::size_t r, std::size_t c) const { return matrix[r * d_in + c]; }

  /// out = M * in. `in.size()` must be d_in.
  void apply(std::span<const double> in, std::span<double> out) const;
  EmbeddingVector apply(const EmbeddingVector& v) const;

  bool operator==(const AdapterWeights&) const = default;
};

/// JSON `{"d_in":..,"d_out":..,"matrix":[[row],...]}`.
std::string adapter_to_json(const AdapterWeights& w);
AdapterWeights adapter_from_json(std::string_view text);
AdapterWeights load_adapter(const std::filesystem::path& path);
void save_adapter(const std::filesystem::path& path, const AdapterWeights& w);

}  // namespace zebra
