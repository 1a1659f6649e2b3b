// Copyright 2026 The EDF Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "edf/unicode.h"

#include <gtest/gtest.h>

namespace edf {
namespace {

TEST(UnicodeTest, DecodesMultiByteSequences) {
  EXPECT_EQ(DecodeUtf8("a\xC3\xA9\xE2\x82\xAC\xF0\x9F\x98\x80"),
            (std::u32string{U'a', U'é', U'€', U'\U0001F600'}));
}

TEST(UnicodeTest, InvalidBytesBecomeReplacementCharacters) {
  EXPECT_EQ(DecodeUtf8("a\xFF" "b"), (std::u32string{U'a', 0xFFFD, U'b'}));
  EXPECT_EQ(DecodeUtf8("\xC3"), (std::u32string{0xFFFD}));
  EXPECT_EQ(DecodeUtf8("\xED\xA0\x80").size(), 3u);  // surrogate
  EXPECT_EQ(DecodeUtf8("\xC0\xAF").size(), 2u);      // overlong
}

TEST(UnicodeTest, EncodeRoundTrips) {
  const std::string text = "caf\xC3\xA9 \xF0\x9F\x98\x80";
  EXPECT_EQ(EncodeUtf8(DecodeUtf8(text)), text);
  EXPECT_EQ(Utf8Length(text), 6u);
}

TEST(UnicodeTest, Classification) {
  EXPECT_TRUE(IsSpace(U' '));
  EXPECT_TRUE(IsSpace(U' '));
  EXPECT_FALSE(IsSpace(U'x'));
  EXPECT_TRUE(IsWordChar(U'x'));
  EXPECT_TRUE(IsWordChar(U'7'));
  EXPECT_TRUE(IsWordChar(U'é'));
  EXPECT_FALSE(IsWordChar(U'-'));
  EXPECT_TRUE(IsPunct(U'.'));
  EXPECT_TRUE(IsPunct(U'’'));
  EXPECT_FALSE(IsPunct(U'a'));
}

TEST(UnicodeTest, LowercasesSupportedScripts) {
  EXPECT_EQ(ToLower(U'A'), U'a');
  EXPECT_EQ(ToLower(U'É'), U'é');
  EXPECT_EQ(ToLower(U'Α'), U'α');
  EXPECT_EQ(ToLower(U'Ж'), U'ж');
  EXPECT_EQ(ToLower(U'中'), U'中');
}

}  // namespace
}  // namespace edf
