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

#include "edf/pipeline.h"

#include <algorithm>
#include <atomic>
#include <sstream>

#include <gtest/gtest.h>

#include "edf/context.h"
#include "edf/error.h"
#include "edf/gazetteer.h"
#include "edf/mock_backends.h"
#include "edf/run_store.h"
#include "edf/synthetic.h"
#include "test_util.h"

namespace edf {
namespace {

using Strings = std::vector<std::string>;

Strings Surfaces(const std::vector<Mention>& mentions) {
  Strings out;
  for (const Mention& m : mentions) out.push_back(m.normalized);
  return out;
}

bool IsSubset(const Strings& a, const Strings& b) {
  return std::all_of(a.begin(), a.end(), [&](const std::string& s) {
    return std::find(b.begin(), b.end(), s) != b.end();
  });
}

Gazetteer Small() {
  Gazetteer g;
  g.subtypes = {{"treatment", {"aspirin"}}, {"drug", {"aspirin"}}, {"procedure", {"aspirin", "endoscopy"}}};
  g.targets = {{"treatment", "treatment"}, {"drug", "treatment"}, {"procedure", "treatment"}};
  g.contamination = {{"procedure", {"lactate"}}};
  return g;
}

TEST(BaselineTest, Examples) {
  const Gazetteer g = Small();
  GazetteerNerBackend ner(g);
  const EntityTypeSpec t = EntityTypeSpec::Make("treatment");
  const auto one = RunBaseline(MakeDocument("d", "took aspirin"), t, ner);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].surface, "aspirin");
  EXPECT_EQ(one[0].origins, std::set<std::string>{"treatment"});

  const auto dup = RunBaseline(MakeDocument("d", "aspirin then aspirin"), t, ner);
  ASSERT_EQ(dup.size(), 1u);
  EXPECT_EQ(dup[0].spans.size(), 2u);

  EXPECT_TRUE(RunBaseline(MakeDocument("d", ""), t, ner).empty());
}

TEST(EdTest, UnionMergesOrigins) {
  const Gazetteer g = Small();
  GazetteerNerBackend ner(g);
  const SubTypeSet s("treatment", DecomposerSource::kCustom, {"drug", "procedure"});
  const auto mentions = RunEd(MakeDocument("d", "aspirin before endoscopy"),
                              EntityTypeSpec::Make("treatment"), s, ner);
  ASSERT_EQ(mentions.size(), 2u);
  EXPECT_EQ(mentions[0].normalized, "aspirin");
  EXPECT_EQ(mentions[0].origins, (std::set<std::string>{"drug", "procedure"}));
  EXPECT_EQ(mentions[1].origins, std::set<std::string>{"procedure"});
  EXPECT_EQ(ner.calls(), 2);
}

TEST(EdTest, MultiTypeBackendMakesOneCall) {
  const Gazetteer g = Small();
  GazetteerMockOptions opts;
  opts.multi_type = true;
  GazetteerNerBackend ner(g, opts);
  const SubTypeSet s("treatment", DecomposerSource::kCustom, {"drug", "procedure"});
  const auto mentions = RunEd(MakeDocument("d", "aspirin before endoscopy"),
                              EntityTypeSpec::Make("treatment"), s, ner);
  EXPECT_EQ(mentions.size(), 2u);
  EXPECT_EQ(ner.calls(), 1);
}

TEST(EdTest, EmptyWhenNothingFound) {
  const Gazetteer g = Small();
  GazetteerNerBackend ner(g);
  const SubTypeSet s("treatment", DecomposerSource::kCustom, {"drug"});
  EXPECT_TRUE(RunEd(MakeDocument("d", "nothing here"), EntityTypeSpec::Make("treatment"), s, ner)
                  .empty());
}

// Fails for listed sub-types, delegates otherwise.
class FlakyNer : public NerBackend {
 public:
  FlakyNer(NerBackend& inner, Strings failing) : inner_(inner), failing_(std::move(failing)) {}
  bool multi_type() const override { return false; }
  Strings ExtractSingle(const Document& doc, std::string_view subtype) override {
    if (std::find(failing_.begin(), failing_.end(), subtype) != failing_.end()) {
      throw BackendError("down");
    }
    return inner_.ExtractSingle(doc, subtype);
  }
  std::map<std::string, Strings> ExtractMulti(const Document&, const SubTypeSet&) override {
    throw BackendError("unsupported");
  }

 private:
  NerBackend& inner_;
  Strings failing_;
};

TEST(EdTest, FailsOnlyWhenEverySubtypeFails) {
  const Gazetteer g = Small();
  GazetteerNerBackend inner(g);
  const SubTypeSet s("treatment", DecomposerSource::kCustom, {"drug", "procedure"});
  const Document doc = MakeDocument("d", "aspirin before endoscopy");
  testing::WarningCapture quiet;
  FlakyNer partial(inner, {"drug"});
  EXPECT_EQ(RunEd(doc, EntityTypeSpec::Make("treatment"), s, partial).size(), 2u);
  FlakyNer broken(inner, {"drug", "procedure"});
  EXPECT_THROW(RunEd(doc, EntityTypeSpec::Make("treatment"), s, broken), BackendError);
}

TEST(EdfTest, OracleKeepsOnTypeMentions) {
  std::istringstream in(
      R"({"id":"d","text":"aspirin and lactate","entities":[{"text":"aspirin","start":0,"end":7,"type":"treatment"}]})");
  const Corpus corpus = ParseJsonl(in);
  const Gazetteer g = Small();
  GazetteerMockOptions opts;
  opts.contamination_rate = 1.0;
  GazetteerNerBackend ner(g, opts);
  OracleFilterModel oracle(corpus);
  Filter filter({}, oracle);
  const SubTypeSet s("treatment", DecomposerSource::kCustom, {"drug", "procedure"});
  const EntityTypeSpec& t = *corpus.FindType("treatment");
  std::vector<Mention> candidates;
  const auto out = RunEdf(corpus.documents[0], t, RunMode::kEdf, &s, ner, &filter, {}, &candidates);
  EXPECT_EQ(Surfaces(out), Strings{"aspirin"});
  EXPECT_EQ(Surfaces(candidates), (Strings{"aspirin", "lactate"}));
  EXPECT_TRUE(candidates[1].verdict.has_value());

  FixedFilterModel reject({-3.0, -0.1});
  FilterConfig one;
  one.threshold = 1.0;
  Filter lenient(one, reject);
  const auto all = RunEdf(corpus.documents[0], t, RunMode::kEdf, &s, ner, &lenient);
  EXPECT_EQ(Surfaces(all), Surfaces(RunEd(corpus.documents[0], t, s, ner)));

  const auto f = RunEdf(corpus.documents[0], t, RunMode::kF, nullptr, ner, &filter);
  EXPECT_TRUE(IsSubset(Surfaces(f), Surfaces(RunBaseline(corpus.documents[0], t, ner))));
}

TEST(RunConfigTest, Validate) {
  RunConfig c;
  EXPECT_NO_THROW(c.Validate());
  c.concurrency = 0;
  EXPECT_THROW(c.Validate(), ConfigError);
  c = {};
  c.filter.threshold = -1;
  EXPECT_THROW(c.Validate(), ConfigError);
  EXPECT_EQ(ParseRunMode("edf"), RunMode::kEdf);
  EXPECT_THROW(ParseRunMode("fe"), ConfigError);
  EXPECT_TRUE(UsesFilter(RunMode::kF));
  EXPECT_FALSE(UsesDecomposer(RunMode::kF));
}

TEST(RunConfigTest, ResolveSubtypesAddsTarget) {
  RunConfig c;
  const SubTypeSet problem = ResolveSubtypes(c, EntityTypeSpec::Make("problem"));
  EXPECT_TRUE(problem.Contains("problem"));
  c.include_target = false;
  EXPECT_FALSE(ResolveSubtypes(c, EntityTypeSpec::Make("problem")).Contains("problem"));
  c.subtypes["problem"] = {"sign"};
  EXPECT_EQ(ResolveSubtypes(c, EntityTypeSpec::Make("problem")).subtypes(), Strings{"sign"});
}

TEST(RunCorpusTest, FilterModesNeedAFilter) {
  const Corpus corpus = GenerateSynthetic(7, 2, Gazetteer::Builtin());
  GazetteerNerBackend ner(Gazetteer::Builtin());
  RunConfig c;
  c.mode = RunMode::kEdf;
  EXPECT_THROW(RunCorpus(corpus, c, ner, nullptr), ConfigError);
}

RunConfig EdfConfig(const std::string& dir) {
  RunConfig c;
  c.mode = RunMode::kEdf;
  c.run_dir = dir;
  return c;
}

TEST(RunCorpusTest, DeterministicReports) {
  const Corpus corpus = GenerateSynthetic(7, 30, Gazetteer::Builtin());
  GazetteerMockOptions opts;
  opts.contamination_rate = 0.5;
  std::string reports[3];
  for (int i = 0; i < 3; ++i) {
    testing::TempDir dir;
    GazetteerNerBackend ner(Gazetteer::Builtin(), opts);
    StochasticFilterModel filter(1, &corpus);
    RunConfig c = EdfConfig(dir.path());
    c.concurrency = i == 2 ? 4 : 1;
    RunCorpus(corpus, c, ner, &filter);
    reports[i] = testing::ReadFile(dir / "report.json");
    if (i == 2) {
      // Parallel runs also produce identical predictions files.
      EXPECT_FALSE(testing::ReadFile(dir / "predictions.jsonl").empty());
    }
  }
  EXPECT_EQ(reports[0], reports[1]);
  EXPECT_EQ(reports[0], reports[2]);
}

TEST(RunCorpusTest, InterruptAndResume) {
  const Corpus corpus = GenerateSynthetic(7, 10, Gazetteer::Builtin());
  testing::TempDir dir;
  RunConfig c = EdfConfig(dir.path());
  c.targets = {"treatment"};
  const Gazetteer& g = Gazetteer::Builtin();

  GazetteerNerBackend first_ner(g);
  OracleFilterModel first_filter(corpus);
  int processed = 0;
  RunHooks hooks;
  hooks.should_stop = [&] { return processed >= 3; };
  hooks.on_record = [&](const PredictionRecord&) { ++processed; };
  const RunResult partial = RunCorpus(corpus, c, first_ner, &first_filter, hooks);
  EXPECT_TRUE(partial.interrupted);
  EXPECT_EQ(processed, 3);
  const int64_t per_doc = first_ner.calls() / 3;
  ASSERT_GT(per_doc, 0);

  GazetteerNerBackend second_ner(g);
  OracleFilterModel second_filter(corpus);
  const RunResult resumed = RunCorpus(corpus, c, second_ner, &second_filter);
  EXPECT_FALSE(resumed.interrupted);
  EXPECT_EQ(resumed.resumed, 3);
  EXPECT_EQ(second_ner.calls(), 7 * per_doc);

  EXPECT_EQ(resumed.report.per_type.size(), 1u);
  EXPECT_EQ(resumed.records.size(), 10u);

  // A completed run is a no-op when rerun.
  GazetteerNerBackend idle_ner(g);
  OracleFilterModel idle_filter(corpus);
  const RunResult again = RunCorpus(corpus, c, idle_ner, &idle_filter);
  EXPECT_EQ(idle_ner.calls(), 0);
  EXPECT_EQ(idle_filter.calls(), 0);
  EXPECT_EQ(again.report, resumed.report);
}

TEST(RunCorpusTest, EdRecallAtLeastBaseline) {
  const Corpus corpus = GenerateSynthetic(7, 100, Gazetteer::Builtin());
  GazetteerNerBackend ner(Gazetteer::Builtin());
  RunConfig base;
  const RunResult b = RunCorpus(corpus, base, ner, nullptr);
  RunConfig ed;
  ed.mode = RunMode::kEd;
  const RunResult e = RunCorpus(corpus, ed, ner, nullptr);
  EXPECT_GE(e.report.metrics.recall, b.report.metrics.recall);
  EXPECT_GT(e.report.metrics.recall, b.report.metrics.recall);
  ASSERT_EQ(b.records.size(), e.records.size());
  for (size_t i = 0; i < b.records.size(); ++i) {
    EXPECT_TRUE(IsSubset(Surfaces(b.records[i].mentions), Surfaces(e.records[i].mentions)));
  }
}

TEST(RunCorpusTest, FailuresAreIsolated) {
  const Corpus corpus = GenerateSynthetic(7, 5, Gazetteer::Builtin());
  GazetteerNerBackend inner(Gazetteer::Builtin());
  FlakyNer broken(inner, {"problem"});
  RunConfig c;
  testing::WarningCapture quiet;
  const RunResult r = RunCorpus(corpus, c, broken, nullptr);
  int failed = 0;
  for (const PredictionRecord& rec : r.records) failed += !rec.ok;
  EXPECT_EQ(failed, 5);
  EXPECT_EQ(r.report.failures.size(), 5u);
  EXPECT_GT(r.report.counts.tp, 0);
}

TEST(MergeMentionsTest, FirstSurfaceWins) {
  const Document doc = MakeDocument("d", "Aspirin and aspirin");
  auto a = MakeMentions(doc, {"Aspirin"}, "drug", {});
  auto b = MakeMentions(doc, {"aspirin", "ASPIRIN"}, "medication", {});
  a.insert(a.end(), b.begin(), b.end());
  const auto merged = MergeMentions(a);
  ASSERT_EQ(merged.size(), 1u);
  EXPECT_EQ(merged[0].surface, "Aspirin");
  EXPECT_EQ(merged[0].origins, (std::set<std::string>{"drug", "medication"}));
  EXPECT_EQ(merged[0].spans.size(), 2u);
}

}  // namespace
}  // namespace edf
