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

#ifndef EDF_PIPELINE_H_
#define EDF_PIPELINE_H_

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "edf/backend.h"
#include "edf/corpus.h"
#include "edf/eval.h"
#include "edf/filter.h"
#include "edf/types.h"

namespace edf {

enum class RunMode { kBaseline, kEd, kF, kEdf };

std::string_view ToString(RunMode mode);
RunMode ParseRunMode(std::string_view name);

bool UsesDecomposer(RunMode mode);
bool UsesFilter(RunMode mode);

struct RunConfig {
  RunMode mode = RunMode::kBaseline;
  // Target types; empty means every type in the corpus catalog.
  std::vector<std::string> targets;
  DecomposerSource source = DecomposerSource::kAnnotation;
  bool include_target = true;
  // Explicit sub-types per target (custom lists, or lists already obtained
  // from a model). Other targets use the registry.
  std::map<std::string, std::vector<std::string>> subtypes;
  // Type definitions overriding the corpus catalog.
  std::map<std::string, EntityTypeSpec> types;
  FilterConfig filter;
  NormalizationConfig normalization;
  // Documents processed in parallel.
  int concurrency = 1;
  // Where artifacts go; empty keeps the run in memory.
  std::string run_dir;
  // Pick up completed work already in run_dir.
  bool resume = true;
  // Backend settings recorded under "backends" in config.json.
  std::string backends_json = "{}";

  // Throws edf::ConfigError on inconsistent settings.
  void Validate() const;
};

// config.json contents; sub-types as resolved for each target.
std::string RunConfigJson(const RunConfig& config,
                          const std::map<std::string, SubTypeSet>& subtypes);

// Spec for a target: config override, else corpus catalog, else the bare
// name; the description falls back to the built-in one.
EntityTypeSpec ResolveType(const RunConfig& config, const Corpus& corpus,
                           std::string_view name);

// Sub-types for a target, with the target appended when include_target is
// set.
SubTypeSet ResolveSubtypes(const RunConfig& config, const EntityTypeSpec& target);

// Mentions from raw surfaces of one query, grounded in doc.
std::vector<Mention> MakeMentions(const Document& doc,
                                  const std::vector<std::string>& surfaces,
                                  std::string_view origin,
                                  const NormalizationConfig& config);

// Merges mentions with equal normalized surfaces (first surface wins,
// origins are united). Output is ordered by normalized surface.
std::vector<Mention> MergeMentions(std::vector<Mention> mentions);

// One retrieval with the target itself as the sub-type.
std::vector<Mention> RunBaseline(const Document& doc, const EntityTypeSpec& target,
                                 NerBackend& ner,
                                 const NormalizationConfig& config = {});

// One retrieval per sub-type (or one multi-type call) and the union of the
// results. Throws the first edf::BackendError only when every sub-type
// query failed; other failures are logged.
std::vector<Mention> RunEd(const Document& doc, const EntityTypeSpec& target,
                           const SubTypeSet& subtypes, NerBackend& ner,
                           const NormalizationConfig& config = {});

// Mode f filters the baseline mentions, mode edf the ED mentions. All
// candidates, with verdicts, go to candidates when given; the accepted ones
// are returned. Modes baseline and ed return the unfiltered mentions.
std::vector<Mention> RunEdf(const Document& doc, const EntityTypeSpec& target,
                            RunMode mode, const SubTypeSet* subtypes,
                            NerBackend& ner, Filter* filter,
                            const NormalizationConfig& config = {},
                            std::vector<Mention>* candidates = nullptr);

struct RunHooks {
  // Polled before each (document, type) item; true stops the run, leaving
  // the run directory resumable.
  std::function<bool()> should_stop;
  // Called after each item is recorded.
  std::function<void(const PredictionRecord&)> on_record;
};

struct RunResult {
  std::vector<PredictionRecord> records;
  EvalReport report;
  bool interrupted = false;
  // Items skipped because an earlier run completed them.
  int64_t resumed = 0;
  std::map<std::string, SubTypeSet> subtypes;
};

// Runs every (document, target) item. Failed items are recorded and the
// run continues. filter_model is required for modes f and edf.
RunResult RunCorpus(const Corpus& corpus, const RunConfig& config,
                    NerBackend& ner, FilterModel* filter_model,
                    const RunHooks& hooks = {});

}  // namespace edf

#endif  // EDF_PIPELINE_H_
