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

// Small string helpers shared across modules.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace zebra {

std::string_view trim(std::string_view s);
std::string ascii_lower(std::string_view s);
std::string join(std::span<const std::string> parts, std::string_view sep);
std::vector<std::string> split_lines(std::string_view text);
bool starts_with_ci(std::string_view s, std::string_view prefix);

/// Shortest decimal string that round-trips to `v`.
std::string format_double(double v);

/// "A", "A and B", "A, B and C", ...
std::string render_label_list(std::span<const std::string> labels);

/// English word for small counts ("two", "three"); digits above twenty.
std::string count_word(std::size_t n);

std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed = 0);
std::uint64_t splitmix64(std::uint64_t x);
std::string sha256_hex(std::string_view data);

}  // namespace zebra
