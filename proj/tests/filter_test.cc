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

#include "edf/filter.h"

#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "edf/corpus.h"
#include "edf/error.h"
#include "edf/gazetteer.h"
#include "edf/synthetic.h"
#include "edf/mock_backends.h"
#include "edf/pipeline.h"
#include "test_util.h"

namespace edf {
namespace {

// Independent softmax over the two candidates, shifted for stability.
double SoftmaxNo(double lp_yes, double lp_no) {
  const double m = std::max(lp_yes, lp_no);
  const double y = std::exp(lp_yes - m), n = std::exp(lp_no - m);
  return n / (y + n);
}

TEST(ProbabilityNoTest, MatchesSoftmax) {
  const double expected = SoftmaxNo(-0.1, -2.4);
  EXPECT_NEAR(expected, 0.0911, 5e-5);
  EXPECT_NEAR(ProbabilityNo({-0.1, -2.4}), expected, 1e-12);
  EXPECT_DOUBLE_EQ(ProbabilityNo({-1.0, -1.0}), 0.5);
  EXPECT_DOUBLE_EQ(ProbabilityNo({-800.0, -0.0}), 1.0);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> lp(-50.0, 0.0);
  for (int i = 0; i < 1000; ++i) {
    const double a = lp(rng), b = lp(rng);
    EXPECT_NEAR(ProbabilityNo({a, b}), SoftmaxNo(a, b), 1e-12);
    EXPECT_NEAR(ProbabilityNo({a, b}) + ProbabilityNo({b, a}), 1.0, 1e-12);
  }
}

TEST(VerdictTest, Examples) {
  const FilterVerdict v = MakeVerdict({-0.1, -2.4}, 0.0);
  EXPECT_EQ(v.answer, Answer::kYes);
  EXPECT_NEAR(v.p_no, 0.0911, 5e-5);
  EXPECT_TRUE(v.accepted);

  const FilterVerdict tie = MakeVerdict({-1.0, -1.0}, 0.0);
  EXPECT_EQ(tie.answer, Answer::kNo);
  EXPECT_DOUBLE_EQ(tie.p_no, 0.5);
  EXPECT_FALSE(tie.accepted);
}

TEST(ThresholdTest, Examples) {
  EXPECT_FALSE(ApplyThreshold(Answer::kNo, 0.9, 0.0));
  EXPECT_TRUE(ApplyThreshold(Answer::kNo, 0.9, 0.95));
  for (double tau : {0.0, 0.3, 0.5, 0.9, 1.0}) {
    EXPECT_TRUE(ApplyThreshold(Answer::kYes, 0.2, tau));
  }
  EXPECT_FALSE(ApplyThreshold(Answer::kNo, 1.0, 1.0));
  EXPECT_TRUE(ApplyThreshold(Answer::kNo, 0.999999, 1.0));
  EXPECT_THROW(ApplyThreshold(Answer::kNo, 0.9, -0.01), ConfigError);
  EXPECT_THROW(ApplyThreshold(Answer::kNo, 0.9, 1.5), ConfigError);
}

// Accepted(tau) is monotone in tau, tau <= 0.5 equals tau = 0.
TEST(ThresholdTest, MonotoneProperty) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> lp(-10.0, 0.0);
  for (int i = 0; i < 2000; ++i) {
    const YesNoScores s{lp(rng), lp(rng)};
    const FilterVerdict v = MakeVerdict(s, 0.0);
    EXPECT_EQ(v.answer == Answer::kNo, v.p_no >= 0.5);
    bool previous = false;
    for (int k = 0; k <= 20; ++k) {
      const double tau = k / 20.0;
      const bool accepted = ApplyThreshold(v.answer, v.p_no, tau);
      EXPECT_TRUE(!previous || accepted);
      if (tau <= 0.5) EXPECT_EQ(accepted, v.accepted);
      previous = accepted;
    }
  }
}

TEST(FilterConfigTest, Validate) {
  FilterConfig c;
  EXPECT_NO_THROW(c.Validate());
  c.threshold = 2;
  EXPECT_THROW(c.Validate(), ConfigError);
  c = {};
  c.wrapper_template = "gner";
  EXPECT_THROW(c.Validate(), ConfigError);
  EXPECT_EQ(ParsePromptVariant("described"), PromptVariant::kDescribed);
  EXPECT_THROW(ParsePromptVariant("fancy"), ConfigError);
}

Corpus OneDoc() {
  std::istringstream in(
      R"({"id":"d1","text":"Started aspirin. Checked lactate. Gave aspirin again.","entities":[{"text":"aspirin","start":8,"end":15,"type":"treatment"},{"text":"aspirin","start":39,"end":46,"type":"treatment"}]})");
  return ParseJsonl(in);
}

std::vector<Mention> Candidates(const Document& doc, std::vector<std::string> surfaces) {
  return MakeMentions(doc, surfaces, "drug", {});
}

TEST(FilterSetTest, OracleRemovesOffTypeSurface) {
  const Corpus corpus = OneDoc();
  const Document& doc = corpus.documents[0];
  OracleFilterModel model(corpus);
  Filter filter({}, model);
  auto mentions = Candidates(doc, {"aspirin", "lactate"});
  const auto kept = filter.FilterSet(mentions, *corpus.FindType("treatment"), doc);
  ASSERT_EQ(kept.size(), 1u);
  EXPECT_EQ(kept[0].normalized, "aspirin");
  ASSERT_TRUE(mentions[1].verdict.has_value());
  EXPECT_FALSE(mentions[1].verdict->accepted);
  EXPECT_EQ(mentions[1].verdict->answer, Answer::kNo);
  EXPECT_EQ(model.calls(), 2);
}

TEST(FilterSetTest, ThresholdOneKeepsEverything) {
  const Corpus corpus = OneDoc();
  const Document& doc = corpus.documents[0];
  FixedFilterModel model({-5.0, -0.01});
  FilterConfig config;
  config.threshold = 1.0;
  Filter filter(config, model);
  auto mentions = Candidates(doc, {"aspirin", "lactate"});
  const auto kept = filter.FilterSet(mentions, *corpus.FindType("treatment"), doc);
  EXPECT_EQ(kept, mentions);
  EXPECT_EQ(mentions[0].verdict->answer, Answer::kNo);
}

TEST(FilterSetTest, EmptyInputMakesNoCalls) {
  const Corpus corpus = OneDoc();
  FixedFilterModel model({-0.1, -2.4});
  Filter filter({}, model);
  std::vector<Mention> none;
  EXPECT_TRUE(filter.FilterSet(none, *corpus.FindType("treatment"), corpus.documents[0]).empty());
  EXPECT_EQ(model.calls(), 0);
}

TEST(FilterSetTest, OneCallPerSurfaceAndContext) {
  const Corpus corpus = OneDoc();
  const Document& doc = corpus.documents[0];
  const EntityTypeSpec& type = *corpus.FindType("treatment");
  std::vector<Mention> mentions = Candidates(doc, {"aspirin"});
  Mention again = mentions[0];
  again.surface = "Aspirin";
  mentions.push_back(again);

  FixedFilterModel model({-0.1, -2.4});
  Filter no_context({}, model);
  no_context.FilterSet(mentions, type, doc);
  EXPECT_EQ(model.calls(), 1);
  EXPECT_EQ(mentions[0].verdict, mentions[1].verdict);

  FixedFilterModel document_model({-0.1, -2.4});
  FilterConfig whole;
  whole.context_mode = ContextMode::kDocument;
  Filter with_document(whole, document_model);
  with_document.FilterSet(mentions, type, doc);
  EXPECT_EQ(document_model.calls(), 1);
}

TEST(FilterSetTest, OutputIsSubsetProperty) {
  const Corpus corpus = GenerateSynthetic(4, 30, Gazetteer::Builtin());
  GazetteerMockOptions opts;
  opts.contamination_rate = 0.5;
  GazetteerNerBackend ner(Gazetteer::Builtin(), opts);
  StochasticFilterModel model(11);
  for (double tau : {0.0, 0.6, 0.8, 1.0}) {
    for (ContextMode mode : {ContextMode::kNone, ContextMode::kSentence, ContextMode::kParagraph}) {
      FilterConfig config;
      config.threshold = tau;
      config.context_mode = mode;
      Filter filter(config, model);
      for (const Document& doc : corpus.documents) {
        std::vector<std::string> surfaces;
        for (const std::string& s : ner.ExtractSingle(doc, "drug")) surfaces.push_back(s);
        for (const std::string& s : ner.ExtractSingle(doc, "medical procedure")) surfaces.push_back(s);
        auto mentions = Candidates(doc, surfaces);
        const auto kept = filter.FilterSet(mentions, EntityTypeSpec::Make("treatment"), doc);
        for (const Mention& m : kept) {
          EXPECT_NE(std::find(mentions.begin(), mentions.end(), m), mentions.end());
          EXPECT_TRUE(m.verdict->accepted);
        }
        for (const Mention& m : mentions) ASSERT_TRUE(m.verdict.has_value());
        if (tau == 1.0) EXPECT_EQ(kept.size(), mentions.size());
      }
    }
  }
}

TEST(ClassifyTest, PromptCarriesContext) {
  const Corpus corpus = OneDoc();
  const Document& doc = corpus.documents[0];
  CompletionResponse canned;
  canned.first_token_candidates = std::map<std::string, double>{{"Yes", -0.1}, {"No", -2.4}};
  CannedCompletionClient client(canned);
  LlmFilterModel model(BackendDescriptor::FilterDefaults(), client);
  FilterConfig config;
  config.context_mode = ContextMode::kSentence;
  Filter filter(config, model);
  const auto mentions = Candidates(doc, {"lactate"});
  const FilterVerdict v = filter.Classify(doc, mentions[0], *corpus.FindType("treatment"));
  EXPECT_EQ(v.answer, Answer::kYes);
  const std::string prompt = client.prompts().at(0);
  EXPECT_NE(prompt.find("[Discharge Summary Begin]\nChecked lactate.\n"), std::string::npos)
      << prompt;
  EXPECT_NE(prompt.find("Can 'lactate' be considered a/an treatment?"), std::string::npos);
}

TEST(ClassifyTest, FilterModelRejectsNonYesNoText) {
  ScriptedCompletionClient client([](const CompletionRequest&) {
    return CompletionResponse{"Maybe", std::map<std::string, double>{{"Yes", -1}, {"No", -2}}, 1};
  });
  LlmFilterModel model(BackendDescriptor::FilterDefaults(), client);
  const Corpus corpus = OneDoc();
  Filter filter({}, model);
  // The scripted client rewrites text to the argmax, so this succeeds.
  EXPECT_NO_THROW(filter.Classify(corpus.documents[0], Candidates(corpus.documents[0], {"aspirin"})[0],
                                  *corpus.FindType("treatment")));
}

TEST(ClassifyTest, DescribedPromptNeedsDescription) {
  const Corpus corpus = OneDoc();
  FixedFilterModel model({-0.1, -2.4});
  FilterConfig config;
  config.prompt_variant = PromptVariant::kDescribed;
  Filter filter(config, model);
  const auto m = Candidates(corpus.documents[0], {"aspirin"});
  EXPECT_NO_THROW(filter.Classify(corpus.documents[0], m[0],
                                  EntityTypeSpec::Make("treatment", BuiltinDescription("treatment"))));
  EXPECT_THROW(filter.Classify(corpus.documents[0], m[0], EntityTypeSpec::Make("allergen")),
               ConfigError);
}

TEST(MockFilterTest, PolarityModelFollowsNegationCues) {
  PolarityFilterModel model;
  const Document doc = MakeDocument("d", "Denies chest pain. Has fever.");
  const EntityTypeSpec type = EntityTypeSpec::Make("problem");
  FilterQuery q{&doc, "chest pain", &type, nullptr, ""};
  EXPECT_GT(ProbabilityNo(model.Score(q)), 0.5);
  q.entity = "fever";
  EXPECT_LT(ProbabilityNo(model.Score(q)), 0.5);
}

TEST(MockFilterTest, StochasticIsDeterministic) {
  const Document doc = MakeDocument("d", "x");
  const EntityTypeSpec type = EntityTypeSpec::Make("problem");
  StochasticFilterModel a(5), b(5);
  for (const char* e : {"a", "b", "c"}) {
    FilterQuery q{&doc, e, &type, nullptr, ""};
    const double pa = ProbabilityNo(a.Score(q));
    EXPECT_DOUBLE_EQ(pa, ProbabilityNo(b.Score(q)));
    EXPECT_GE(pa, 0.01);
    EXPECT_LE(pa, 0.99);
  }
}

}  // namespace
}  // namespace edf
