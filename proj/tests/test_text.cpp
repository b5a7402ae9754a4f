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

#include <gtest/gtest.h>

#include "zebra/text.hpp"

namespace zebra {
namespace {

TEST(Text, Trim) {
  EXPECT_EQ(trim("  a b \t\n"), "a b");
  EXPECT_EQ(trim("   "), "");
}

TEST(Text, SplitLinesStripsCarriageReturn) {
  auto lines = split_lines("a\r\nb\n\nc");
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(lines[0], "a");
  EXPECT_EQ(lines[2], "");
  EXPECT_EQ(lines[3], "c");
}

TEST(Text, LabelList) {
  std::vector<std::string> two{"A", "B"}, five{"A", "B", "C", "D", "E"};
  EXPECT_EQ(render_label_list(two), "A and B");
  EXPECT_EQ(render_label_list(five), "A, B, C, D and E");
}

TEST(Text, CountWord) {
  EXPECT_EQ(count_word(3), "three");
  EXPECT_EQ(count_word(5), "five");
  EXPECT_EQ(count_word(26), "26");
}

TEST(Text, FormatDoubleShortest) {
  EXPECT_EQ(format_double(0.7), "0.7");
  EXPECT_EQ(format_double(1.0), "1");
}

TEST(Text, Sha256KnownVector) {
  EXPECT_EQ(sha256_hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Text, Fnv1aSeedMatters) { EXPECT_NE(fnv1a64("x", 1), fnv1a64("x", 2)); }

}  // namespace
}  // namespace zebra
