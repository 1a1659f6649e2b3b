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

#include "edf/corpus.h"

#include <sstream>

#include <gtest/gtest.h>

#include "edf/context.h"
#include "edf/error.h"
#include "edf/gazetteer.h"
#include "edf/log.h"
#include "edf/normalize.h"
#include "edf/synthetic.h"
#include "test_util.h"

namespace edf {
namespace {

Corpus FromJsonl(const std::string& text) {
  std::istringstream in(text);
  return ParseJsonl(in);
}

Corpus FromBio(const std::string& text, std::vector<std::string>* warnings = nullptr) {
  std::istringstream in(text);
  auto old = SetWarningSink([](std::string_view) {});
  Corpus c = ParseBio(in, warnings);
  SetWarningSink(old);
  return c;
}

TEST(JsonlTest, LoadsOneDocument) {
  const Corpus c = FromJsonl(
      R"({"id":"d1","text":"Started aspirin.","entities":[{"text":"aspirin","start":8,"end":15,"type":"treatment"}]})"
      "\n");
  ASSERT_EQ(c.documents.size(), 1u);
  const auto gold = c.GoldFor("d1", "treatment");
  ASSERT_EQ(gold.size(), 1u);
  EXPECT_EQ(gold[0].surface, "aspirin");
  EXPECT_EQ(gold[0].span, (CharSpan{8, 15}));
  EXPECT_EQ(gold[0].polarity, Polarity::kUnspecified);
  ASSERT_EQ(c.catalog.size(), 1u);
  EXPECT_EQ(c.catalog[0].name, "treatment");
}

TEST(JsonlTest, ReadsPolarity) {
  const Corpus c = FromJsonl(
      R"({"id":"d1","text":"Denies chest pain.","entities":[{"text":"chest pain","start":7,"end":17,"type":"problem","polarity":"negative"}]})");
  EXPECT_EQ(c.GoldFor("d1", "problem").at(0).polarity, Polarity::kNegative);
}

TEST(JsonlTest, SpanMismatchNamesTheEntity) {
  try {
    FromJsonl(
        "\n"
        R"({"id":"d1","text":"Started aspirin.","entities":[{"text":"heparin","start":8,"end":15,"type":"treatment"}]})");
    FAIL() << "expected an error";
  } catch (const Error& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("heparin"), std::string::npos) << what;
    EXPECT_NE(what.find("line 2"), std::string::npos) << what;
    EXPECT_NE(what.find("8"), std::string::npos) << what;
  }
}

TEST(JsonlTest, MalformedLineReportsLineNumber) {
  try {
    FromJsonl("{\"id\":\"a\",\"text\":\"x\",\"entities\":[]}\n{oops\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
}

TEST(JsonlTest, RejectsUnknownPolarityAndBadOffsets) {
  EXPECT_THROW(FromJsonl(R"({"id":"d","text":"ab","entities":[{"text":"a","start":0,"end":1,"type":"t","polarity":"maybe"}]})"),
               Error);
  EXPECT_THROW(FromJsonl(R"({"id":"d","text":"ab","entities":[{"text":"ab","start":0,"end":3,"type":"t"}]})"),
               Error);
  EXPECT_THROW(FromJsonl("{\"id\":\"d\",\"text\":\"a\",\"entities\":[]}\n"
                         "{\"id\":\"d\",\"text\":\"b\",\"entities\":[]}\n"),
               Error);
}

TEST(JsonlTest, CharacterOffsetsWithUnicode) {
  const Corpus c = FromJsonl(
      R"({"id":"d","text":"Café: Ölbad given.","entities":[{"text":"Ölbad","start":6,"end":11,"type":"treatment"}]})");
  EXPECT_EQ(c.GoldFor("d", "treatment").size(), 1u);
}

TEST(JsonlTest, WriteThenReadIsIdentity) {
  const Corpus original = GenerateSynthetic(3, 10, Gazetteer::Builtin());
  std::stringstream buffer;
  WriteJsonl(original, buffer);
  const Corpus reread = ParseJsonl(buffer);
  EXPECT_EQ(reread.documents, original.documents);
  EXPECT_EQ(reread.gold, original.gold);
  std::stringstream again;
  WriteJsonl(reread, again);
  EXPECT_EQ(again.str(), buffer.str());
}

TEST(JsonlTest, LoadFromFile) {
  testing::TempDir dir;
  const Corpus original = GenerateSynthetic(5, 4, Gazetteer::Builtin());
  WriteJsonl(original, dir / "c.jsonl");
  EXPECT_EQ(LoadJsonl(dir / "c.jsonl").documents, original.documents);
  EXPECT_THROW(LoadJsonl(dir / "missing.jsonl"), Error);
}

TEST(BioTest, SingleEntity) {
  const Corpus c = FromBio("took\tO\naspirin\tB-treatment\n");
  ASSERT_EQ(c.documents.size(), 1u);
  const auto gold = c.GoldFor(c.documents[0].id(), "treatment");
  ASSERT_EQ(gold.size(), 1u);
  EXPECT_EQ(gold[0].surface, "aspirin");
  EXPECT_EQ(c.documents[0].text(), "took aspirin");
}

TEST(BioTest, MultiTokenEntity) {
  const Corpus c = FromBio("New\tB-loc\nYork\tI-loc\n");
  const auto gold = c.GoldFor(c.documents[0].id(), "loc");
  ASSERT_EQ(gold.size(), 1u);
  EXPECT_EQ(gold[0].surface, "New York");
}

TEST(BioTest, StrayInsideIsRepairedWithWarning) {
  std::vector<std::string> warnings;
  const Corpus c = FromBio("York\tI-loc\n", &warnings);
  const auto gold = c.GoldFor(c.documents[0].id(), "loc");
  ASSERT_EQ(gold.size(), 1u);
  EXPECT_EQ(gold[0].surface, "York");
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_NE(warnings[0].find("line 1"), std::string::npos);
}

TEST(BioTest, DocstartGroupsSentences) {
  const Corpus c = FromBio(
      "-DOCSTART- note1\n\nGave\tO\nheparin\tB-drug\n.\tO\n\nStable\tO\n\n"
      "-DOCSTART- note2\nNo\tO\nfever\tB-problem\n");
  ASSERT_EQ(c.documents.size(), 2u);
  EXPECT_EQ(c.documents[0].id(), "note1");
  EXPECT_EQ(c.documents[0].text(), "Gave heparin .\nStable");
  EXPECT_EQ(c.documents[0].sentences().size(), 2u);
  EXPECT_EQ(c.GoldFor("note2", "problem").at(0).surface, "fever");
}

TEST(BioTest, BlankLineBlocksWithoutDocstartAreDocuments) {
  const Corpus c = FromBio("a\tO\n\nb\tB-x\n");
  ASSERT_EQ(c.documents.size(), 2u);
  EXPECT_EQ(c.documents[1].id(), "bio-2");
}

TEST(BioTest, UnknownTagShapeIsAnError) {
  try {
    FromBio("a\tO\nb\tX-drug\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
}

TEST(SyntheticTest, DeterministicForSeed) {
  std::stringstream a, b;
  WriteJsonl(GenerateSynthetic(7, 3, Gazetteer::Builtin()), a);
  WriteJsonl(GenerateSynthetic(7, 3, Gazetteer::Builtin()), b);
  EXPECT_EQ(a.str(), b.str());
  std::stringstream c;
  WriteJsonl(GenerateSynthetic(8, 3, Gazetteer::Builtin()), c);
  EXPECT_NE(a.str(), c.str());
}

TEST(SyntheticTest, GoldSpansMatchSurfaces) {
  const Corpus c = GenerateSynthetic(11, 100, Gazetteer::Builtin());
  ASSERT_EQ(c.documents.size(), 100u);
  size_t n = 0;
  for (const Document& doc : c.documents) {
    for (const GoldEntity& g : c.gold.at(doc.id())) {
      ASSERT_EQ(doc.Slice(g.span), g.surface);
      ++n;
    }
  }
  EXPECT_GT(n, 100u);
  EXPECT_NO_THROW(c.Validate());
}

TEST(SyntheticTest, NegationTemplatesMarkNegativePolarity) {
  const Corpus c = GenerateSynthetic(7, 50, Gazetteer::Builtin());
  size_t negative = 0;
  for (const Document& doc : c.documents) {
    for (const GoldEntity& g : c.gold.at(doc.id())) {
      const std::string before = FoldCase(doc.Slice({g.span.begin >= 20 ? g.span.begin - 20 : 0,
                                                     g.span.begin}));
      const bool cued = before.find("denies ") != std::string::npos ||
                        before.find("no evidence of ") != std::string::npos ||
                        before.find("negative for ") != std::string::npos ||
                        before.find("without ") != std::string::npos;
      if (g.polarity == Polarity::kNegative) {
        ++negative;
        EXPECT_TRUE(cued) << doc.id() << ": " << g.surface;
        EXPECT_TRUE(IsNegatedIn(doc, g.surface));
      } else {
        EXPECT_EQ(g.polarity, Polarity::kPositive);
      }
    }
  }
  EXPECT_GT(negative, 0u);
}

TEST(SyntheticTest, GoldTypesFollowGazetteerTargets) {
  const Gazetteer& g = Gazetteer::Builtin();
  const Corpus c = GenerateSynthetic(2, 30, g);
  for (const auto& [id, golds] : c.gold) {
    for (const GoldEntity& e : golds) {
      bool found = false;
      for (const auto& [subtype, surfaces] : g.subtypes) {
        for (const std::string& s : surfaces) {
          if (s == e.surface || FoldCase(s) == FoldCase(e.surface)) {
            EXPECT_EQ(g.targets.at(subtype), e.type) << e.surface;
            found = true;
          }
        }
      }
      EXPECT_TRUE(found) << e.surface;
    }
  }
}

TEST(SyntheticTest, RejectsEmptyGazetteer) {
  EXPECT_THROW(GenerateSynthetic(1, 1, Gazetteer{}), Error);
  EXPECT_THROW(GenerateSynthetic(1, 0, Gazetteer::Builtin()), Error);
}

TEST(GazetteerTest, BuiltinIsValidAndRoundTrips) {
  const Gazetteer& g = Gazetteer::Builtin();
  EXPECT_NO_THROW(g.Validate());
  EXPECT_EQ(Gazetteer::FromJson(g.ToJson()), g);
  ASSERT_NE(g.Surfaces("DRUG"), nullptr);
  EXPECT_EQ(g.Surfaces("nothing"), nullptr);
}

TEST(GazetteerTest, ContaminationMustBeDisjoint) {
  Gazetteer g;
  g.subtypes["drug"] = {"aspirin"};
  g.targets["drug"] = "treatment";
  g.contamination["drug"] = {"Aspirin"};
  EXPECT_THROW(g.Validate(), Error);
  g.contamination["drug"] = {"lactate"};
  EXPECT_NO_THROW(g.Validate());
  g.contamination["ghost"] = {"x"};
  EXPECT_THROW(g.Validate(), Error);
}

TEST(CorpusTest, ValidateCatchesDanglingGold) {
  Corpus c;
  c.documents.push_back(MakeDocument("d", "aspirin"));
  c.catalog.push_back(EntityTypeSpec::Make("treatment"));
  c.gold["d"] = {{"aspirin", {0, 7}, "treatment", Polarity::kUnspecified}};
  EXPECT_NO_THROW(c.Validate());
  c.gold["missing"] = {};
  EXPECT_THROW(c.Validate(), Error);
  c.gold.erase("missing");
  c.gold["d"].push_back({"aspirin", {0, 7}, "drug", Polarity::kUnspecified});
  EXPECT_THROW(c.Validate(), Error);
}

}  // namespace
}  // namespace edf
