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

#include "edf/types.h"

#include <gtest/gtest.h>

#include "edf/error.h"

namespace edf {
namespace {

TEST(DocumentTest, ValidatesRanges) {
  EXPECT_NO_THROW(Document("d", "A b.", {{0, 4}}, {{0, 4}}));
  EXPECT_THROW(Document("d", "A b.", {{0, 5}}, {{0, 4}}), Error);
  EXPECT_THROW(Document("d", "A b. C", {{0, 4}, {3, 6}}, {{0, 6}}), Error);
}

TEST(DocumentTest, ParagraphsMustCoverText) {
  EXPECT_THROW(Document("d", "A b. C", {{0, 4}}, {{0, 4}}), Error);
  EXPECT_NO_THROW(Document("d", "  A  ", {{2, 3}}, {{2, 3}}));
}

TEST(DocumentTest, OffsetsCountScalarValues) {
  Document doc("d", "caf\xC3\xA9 ok", {{0, 7}}, {{0, 7}});
  EXPECT_EQ(doc.length(), 7u);
  EXPECT_EQ(doc.Slice({0, 4}), "caf\xC3\xA9");
  EXPECT_EQ(doc.Slice({5, 7}), "ok");
  EXPECT_THROW(doc.Slice({5, 8}), Error);
}

TEST(EntityTypeSpecTest, TrimsAndRejectsEmptyNames) {
  EXPECT_EQ(EntityTypeSpec::Make("  treatment ").name, "treatment");
  EXPECT_THROW(EntityTypeSpec::Make("   "), Error);
}

TEST(SubTypeSetTest, Invariants) {
  SubTypeSet s("treatment", DecomposerSource::kCustom, {"drug", "Device"});
  EXPECT_TRUE(s.Contains("DRUG"));
  EXPECT_TRUE(s.Contains("device"));
  EXPECT_FALSE(s.Contains("test"));
  EXPECT_THROW(SubTypeSet("t", DecomposerSource::kCustom, {}), Error);
  EXPECT_THROW(SubTypeSet("t", DecomposerSource::kCustom, {"Drug", "DRUG"}), Error);
  EXPECT_THROW(SubTypeSet("t", DecomposerSource::kCustom, {""}), Error);
}

TEST(EnumNamesTest, RoundTrip) {
  for (auto s : {DecomposerSource::kAnnotation, DecomposerSource::kLlmGenerated,
                 DecomposerSource::kUmls, DecomposerSource::kCustom}) {
    EXPECT_EQ(ParseDecomposerSource(ToString(s)), s);
  }
  for (auto p : {Polarity::kPositive, Polarity::kNegative, Polarity::kUnspecified}) {
    EXPECT_EQ(ParsePolarity(ToString(p)), p);
  }
  EXPECT_THROW(ParsePolarity("maybe"), Error);
  EXPECT_EQ(ParseAnswer("yes"), Answer::kYes);
  EXPECT_EQ(ParseAnswer("No"), Answer::kNo);
}

}  // namespace
}  // namespace edf
