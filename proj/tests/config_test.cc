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

#include "config.h"

#include <cstdlib>

#include <gtest/gtest.h>

#include "edf/error.h"
#include "edf/synthetic.h"
#include "test_util.h"

namespace edf::cli {
namespace {

std::string ErrorOf(const std::string& toml) {
  try {
    ParseToolConfig(toml, "exp.toml");
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

TEST(ConfigTest, FullFile) {
  const ToolConfig c = ParseToolConfig(R"(
[run]
mode = "edf"
targets = ["treatment", "problem"]
concurrency = 4
resume = false

[decomposer]
source = "umls"
include_target = false
subtypes.problem = ["sign", "symptom"]
subtypes.treatment = "treatment.txt"

[normalization]
strip_edge_punctuation = true

[ner]
kind = "mock"
contamination = 0.25
seed = 9
multi = true

[filter]
kind = "classifier"
endpoint = "http://localhost:8000/v1/completions"
template = "llama2"
temperature = 0.5
context = "paragraph"
prompt = "described"
threshold = 0.8
max_attempts = 5
backoff_ms = 10
timeout_ms = 1500

[types.allergen]
description = "a substance that causes an allergic reaction"
)");
  EXPECT_EQ(c.run.mode, RunMode::kEdf);
  EXPECT_EQ(c.run.targets, (std::vector<std::string>{"treatment", "problem"}));
  EXPECT_EQ(c.run.concurrency, 4);
  EXPECT_FALSE(c.run.resume);
  EXPECT_EQ(c.run.source, DecomposerSource::kUmls);
  EXPECT_FALSE(c.run.include_target);
  EXPECT_EQ(c.run.subtypes.at("problem"), (std::vector<std::string>{"sign", "symptom"}));
  EXPECT_EQ(c.subtype_files.at("treatment"), "treatment.txt");
  EXPECT_TRUE(c.run.normalization.strip_edge_punctuation);
  EXPECT_TRUE(c.run.normalization.lowercase);
  EXPECT_EQ(c.ner.descriptor.kind, BackendKind::kMock);
  EXPECT_DOUBLE_EQ(c.ner.contamination, 0.25);
  EXPECT_EQ(c.ner.seed, 9u);
  EXPECT_TRUE(c.ner.multi);
  EXPECT_EQ(c.filter.descriptor.kind, BackendKind::kClassifier);
  EXPECT_EQ(c.filter.descriptor.endpoint, "http://localhost:8000/v1/completions");
  EXPECT_DOUBLE_EQ(c.filter.descriptor.decoding.temperature, 0.5);
  EXPECT_DOUBLE_EQ(c.filter.descriptor.decoding.top_p, 0.95);
  EXPECT_EQ(c.filter.descriptor.retry.max_attempts, 5);
  EXPECT_EQ(c.filter.descriptor.retry.base_backoff.count(), 10);
  EXPECT_EQ(c.filter.descriptor.timeout.count(), 1500);
  EXPECT_EQ(c.run.filter.wrapper_template, "llama2");
  EXPECT_EQ(c.run.filter.context_mode, ContextMode::kParagraph);
  EXPECT_EQ(c.run.filter.prompt_variant, PromptVariant::kDescribed);
  EXPECT_DOUBLE_EQ(c.run.filter.threshold, 0.8);
  EXPECT_EQ(*c.run.types.at("allergen").description,
            "a substance that causes an allergic reaction");
}

TEST(ConfigTest, EmptyFileGivesDefaults) {
  const ToolConfig c = ParseToolConfig("");
  EXPECT_EQ(c.run.mode, RunMode::kBaseline);
  EXPECT_TRUE(c.run.include_target);
  EXPECT_DOUBLE_EQ(c.run.filter.threshold, 0.0);
}

TEST(ConfigTest, SyntaxErrorsCarryLineNumbers) {
  const std::string e = ErrorOf("[run]\nmode = \"edf\"\nconcurrency = = 2\n");
  EXPECT_NE(e.find("exp.toml"), std::string::npos) << e;
  EXPECT_NE(e.find("line 3"), std::string::npos) << e;
}

TEST(ConfigTest, UnknownKeysAndSections) {
  std::string e = ErrorOf("[run]\nmode = \"ed\"\n\n[filter]\nthreshhold = 0.5\n");
  EXPECT_NE(e.find("line 5"), std::string::npos) << e;
  EXPECT_NE(e.find("filter.threshhold"), std::string::npos) << e;
  e = ErrorOf("[runner]\nmode = \"ed\"\n");
  EXPECT_NE(e.find("unknown section runner"), std::string::npos) << e;
}

TEST(ConfigTest, BadValues) {
  EXPECT_NE(ErrorOf("[run]\nmode = \"fast\"\n"), "");
  EXPECT_NE(ErrorOf("[run]\nconcurrency = \"two\"\n").find("line 2"), std::string::npos);
  EXPECT_NE(ErrorOf("[filter]\nthreshold = 1.5\n"), "");
  EXPECT_NE(ErrorOf("[filter]\ncontext = \"chapter\"\n"), "");
  EXPECT_NE(ErrorOf("[decomposer]\nsubtypes.problem = [1, 2]\n"), "");
}

TEST(ConfigTest, LoadFromFile) {
  testing::TempDir dir;
  testing::WriteFile(dir / "c.toml", "[run]\nmode = \"f\"\n");
  EXPECT_EQ(LoadToolConfig(dir / "c.toml").run.mode, RunMode::kF);
  EXPECT_THROW(LoadToolConfig(dir / "none.toml"), ConfigError);
}

class EnvTest : public ::testing::Test {
 protected:
  void TearDown() override {
    unsetenv("EDF_ENDPOINT");
    unsetenv("EDF_FILTER_ENDPOINT");
    unsetenv("EDF_TIMEOUT_MS");
  }
};

TEST_F(EnvTest, EnvironmentOverridesFile) {
  ToolConfig c = ParseToolConfig("[ner]\nendpoint = \"http://file\"\n");
  setenv("EDF_ENDPOINT", "http://env", 1);
  setenv("EDF_FILTER_ENDPOINT", "http://filter-env", 1);
  setenv("EDF_TIMEOUT_MS", "250", 1);
  ApplyEnvironment(&c);
  EXPECT_EQ(c.ner.descriptor.endpoint, "http://env");
  EXPECT_EQ(c.filter.descriptor.endpoint, "http://filter-env");
  EXPECT_EQ(c.ner.descriptor.timeout.count(), 250);
  EXPECT_EQ(c.filter.descriptor.timeout.count(), 250);
}

TEST_F(EnvTest, BadTimeout) {
  ToolConfig c;
  setenv("EDF_TIMEOUT_MS", "soon", 1);
  EXPECT_THROW(ApplyEnvironment(&c), ConfigError);
}

TEST(BackendsTest, MissingFieldsAreNamed) {
  ToolConfig c;
  c.ner.descriptor.kind = BackendKind::kSingleType;
  try {
    Backends b(c, nullptr, false);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("ner.endpoint"), std::string::npos);
  }
  c.ner.descriptor.kind = BackendKind::kMock;
  try {
    Backends b(c, nullptr, true);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("filter.endpoint"), std::string::npos) << e.what();
  }
}

TEST(BackendsTest, MockFilters) {
  const Corpus corpus = GenerateSynthetic(1, 3, Gazetteer::Builtin());
  ToolConfig c;
  c.ner.descriptor.kind = BackendKind::kMock;
  c.filter.descriptor.kind = BackendKind::kMock;
  for (const char* mock : {"oracle", "stochastic", "polarity", "yes", "no"}) {
    c.filter.mock = mock;
    Backends b(c, &corpus, true);
    EXPECT_NE(b.filter(), nullptr) << mock;
  }
  c.filter.mock = "sometimes";
  EXPECT_THROW(Backends(c, &corpus, true), ConfigError);
  c.filter.mock = "";
  EXPECT_THROW(Backends(c, &corpus, true), ConfigError);
  Backends no_filter(c, &corpus, false);
  EXPECT_EQ(no_filter.filter(), nullptr);
}

TEST(LoadCorpusTest, PicksReaderByExtension) {
  testing::TempDir dir;
  testing::WriteFile(dir / "c.bio", "took\tO\naspirin\tB-treatment\n");
  EXPECT_EQ(LoadCorpus(dir / "c.bio").documents.size(), 1u);
  const Corpus synthetic = GenerateSynthetic(1, 2, Gazetteer::Builtin());
  WriteJsonl(synthetic, dir / "c.jsonl");
  EXPECT_EQ(LoadCorpus(dir / "c.jsonl").documents, synthetic.documents);
}

}  // namespace
}  // namespace edf::cli
