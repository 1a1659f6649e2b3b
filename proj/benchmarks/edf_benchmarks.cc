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

#include <random>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "edf/context.h"
#include "edf/eval.h"
#include "edf/gazetteer.h"
#include "edf/log.h"
#include "edf/mock_backends.h"
#include "edf/normalize.h"
#include "edf/parsers.h"
#include "edf/pipeline.h"
#include "edf/synthetic.h"

namespace edf {
namespace {

void BM_Normalize(benchmark::State& state) {
  const std::string text = "  Acute   Kidney Injury, \"resolved\"  ";
  NormalizationConfig config;
  config.strip_edge_punctuation = true;
  for (auto _ : state) benchmark::DoNotOptimize(Normalize(text, config));
}
BENCHMARK(BM_Normalize);

void BM_ExactMatch(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const std::vector<std::string> vocab = {"aspirin", "chest pain", "CT", "fever", "heparin",
                                          "blood cultures", "mri", "sepsis"};
  std::vector<std::string> preds, golds;
  for (int64_t i = 0; i < state.range(0); ++i) {
    preds.push_back(vocab[rng() % vocab.size()]);
    golds.push_back(vocab[rng() % vocab.size()]);
  }
  for (auto _ : state) benchmark::DoNotOptimize(ExactMatch(preds, golds));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ExactMatch)->Range(8, 1024);

void BM_ParseBioResponse(benchmark::State& state) {
  std::vector<std::string> words;
  std::vector<BioTag> tags;
  for (int64_t i = 0; i < state.range(0); ++i) {
    words.push_back("word" + std::to_string(i));
    tags.push_back(i % 5 == 0 ? BioTag{BioTag::Kind::kBegin, "drug"}
                   : i % 5 == 1 ? BioTag{BioTag::Kind::kInside, "drug"}
                                : BioTag{});
  }
  const std::string text = RenderBioResponse(words, tags);
  for (auto _ : state) benchmark::DoNotOptimize(ParseBioResponse(text));
  state.SetBytesProcessed(state.iterations() * static_cast<int64_t>(text.size()));
}
BENCHMARK(BM_ParseBioResponse)->Range(16, 2048);

void BM_Ground(benchmark::State& state) {
  const Corpus corpus = GenerateSynthetic(3, 1, Gazetteer::Builtin());
  const Document& doc = corpus.documents.front();
  const std::string surface = corpus.gold.at(doc.id()).front().surface;
  for (auto _ : state) benchmark::DoNotOptimize(Ground(doc, surface));
}
BENCHMARK(BM_Ground);

void BM_RunCorpusEdf(benchmark::State& state) {
  SetWarningSink([](std::string_view) {});
  const Corpus corpus = GenerateSynthetic(7, static_cast<int>(state.range(0)), Gazetteer::Builtin());
  GazetteerMockOptions opts;
  opts.contamination_rate = 0.5;
  GazetteerNerBackend ner(Gazetteer::Builtin(), opts);
  StochasticFilterModel filter(29);
  RunConfig config;
  config.mode = RunMode::kEdf;
  for (auto _ : state) benchmark::DoNotOptimize(RunCorpus(corpus, config, ner, &filter));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RunCorpusEdf)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_SweepThreshold(benchmark::State& state) {
  SetWarningSink([](std::string_view) {});
  const Corpus corpus = GenerateSynthetic(7, 100, Gazetteer::Builtin());
  GazetteerMockOptions opts;
  opts.contamination_rate = 0.5;
  GazetteerNerBackend ner(Gazetteer::Builtin(), opts);
  StochasticFilterModel filter(29);
  RunConfig config;
  config.mode = RunMode::kEdf;
  const RunResult run = RunCorpus(corpus, config, ner, &filter);
  const std::vector<double> grid = ParseGrid("0:1:0.01");
  for (auto _ : state) benchmark::DoNotOptimize(SweepThreshold(run.records, grid));
}
BENCHMARK(BM_SweepThreshold)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace edf

BENCHMARK_MAIN();
