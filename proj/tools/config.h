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

#ifndef EDF_TOOLS_CONFIG_H_
#define EDF_TOOLS_CONFIG_H_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "edf/backend.h"
#include "edf/corpus.h"
#include "edf/filter.h"
#include "edf/gazetteer.h"
#include "edf/pipeline.h"

namespace edf::cli {

struct NerSettings {
  BackendDescriptor descriptor = BackendDescriptor::NerDefaults(BackendKind::kSingleType);
  // Mock only.
  std::string gazetteer;
  double contamination = 0.0;
  uint64_t seed = 0;
  bool multi = false;
};

struct FilterSettings {
  BackendDescriptor descriptor = BackendDescriptor::FilterDefaults();
  // oracle, stochastic, polarity, yes or no; for kind = "mock".
  std::string mock;
  uint64_t seed = 0;
  // Stochastic mock leans towards the gold answer.
  bool bias = true;
};

struct ToolConfig {
  RunConfig run;
  NerSettings ner;
  FilterSettings filter;
  // target -> sub-type file, for source = "custom".
  std::map<std::string, std::string> subtype_files;
  // Completions endpoint for live llm-generated decomposition.
  std::string decomposer_endpoint;
};

// Reads a TOML config; an empty path gives the defaults. Errors carry the
// line number.
ToolConfig LoadToolConfig(const std::string& path);
ToolConfig ParseToolConfig(std::string_view text, const std::string& origin = "config");

// EDF_ENDPOINT, EDF_FILTER_ENDPOINT, EDF_TIMEOUT_MS.
void ApplyEnvironment(ToolConfig* config);

// Loads custom sub-type files into config->run.subtypes.
void ResolveSubtypeFiles(ToolConfig* config);

// Backend settings as recorded in config.json.
std::string BackendsJson(const ToolConfig& config);

// Backends built from a config. Owns clients and mocks.
class Backends {
 public:
  // corpus is needed by the oracle and biased stochastic filter mocks and
  // must outlive this object. The filter is built only when with_filter is
  // set. Throws edf::ConfigError naming a missing field.
  Backends(const ToolConfig& config, const Corpus* corpus, bool with_filter);
  ~Backends();

  NerBackend& ner() { return *ner_; }
  FilterModel* filter() { return filter_.get(); }

 private:
  Gazetteer gazetteer_;
  std::unique_ptr<CompletionClient> ner_client_;
  std::unique_ptr<NerBackend> ner_;
  std::unique_ptr<CompletionClient> filter_client_;
  std::unique_ptr<FilterModel> filter_;
};

// JSONL unless the path ends in .bio, .conll or .tsv.
Corpus LoadCorpus(const std::string& path);

}  // namespace edf::cli

#endif  // EDF_TOOLS_CONFIG_H_
