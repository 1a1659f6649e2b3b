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

#include <atomic>
#include <memory>
#include <mutex>
#include <thread>

#include "edf/context.h"
#include "edf/decomposer.h"
#include "edf/error.h"
#include "edf/log.h"
#include "edf/normalize.h"
#include "edf/run_store.h"
#include "json.hpp"

namespace edf {

using nlohmann::json;

std::string_view ToString(RunMode mode) {
  switch (mode) {
    case RunMode::kBaseline:
      return "baseline";
    case RunMode::kEd:
      return "ed";
    case RunMode::kF:
      return "f";
    case RunMode::kEdf:
      return "edf";
  }
  return "baseline";
}

RunMode ParseRunMode(std::string_view name) {
  for (auto mode : {RunMode::kBaseline, RunMode::kEd, RunMode::kF, RunMode::kEdf}) {
    if (name == ToString(mode)) return mode;
  }
  throw ConfigError("unknown mode '" + std::string(name) +
                    "' (expected baseline, ed, f or edf)");
}

bool UsesDecomposer(RunMode mode) {
  return mode == RunMode::kEd || mode == RunMode::kEdf;
}

bool UsesFilter(RunMode mode) {
  return mode == RunMode::kF || mode == RunMode::kEdf;
}

void RunConfig::Validate() const {
  if (concurrency < 1) throw ConfigError("run.concurrency must be >= 1");
  filter.Validate();
  if (UsesDecomposer(mode) && source == DecomposerSource::kCustom) {
    for (const std::string& t : targets) {
      if (!subtypes.count(t)) {
        throw ConfigError("decomposer.subtypes_file is required for custom "
                          "sub-types of '" + t + "'");
      }
    }
  }
}

std::string RunConfigJson(const RunConfig& config,
                          const std::map<std::string, SubTypeSet>& subtypes) {
  json j;
  j["mode"] = std::string(ToString(config.mode));
  j["targets"] = config.targets;
  json dec = {{"source", std::string(ToString(config.source))},
              {"include_target", config.include_target},
              {"subtypes", json::object()}};
  for (const auto& [target, set] : subtypes) dec["subtypes"][target] = set.subtypes();
  j["decomposer"] = std::move(dec);
  j["filter"] = {{"context", std::string(ToString(config.filter.context_mode))},
                 {"prompt", std::string(ToString(config.filter.prompt_variant))},
                 {"threshold", config.filter.threshold},
                 {"template", config.filter.wrapper_template}};
  j["normalization"] = {
      {"lowercase", config.normalization.lowercase},
      {"collapse_whitespace", config.normalization.collapse_whitespace},
      {"strip_edge_punctuation", config.normalization.strip_edge_punctuation}};
  j["concurrency"] = config.concurrency;
  try {
    j["backends"] = json::parse(config.backends_json);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("backend settings are not JSON: ") + e.what());
  }
  return j.dump(2) + "\n";
}

EntityTypeSpec ResolveType(const RunConfig& config, const Corpus& corpus,
                           std::string_view name) {
  EntityTypeSpec spec;
  if (auto it = config.types.find(std::string(name)); it != config.types.end()) {
    spec = it->second;
  } else if (const EntityTypeSpec* cataloged = corpus.FindType(name)) {
    spec = *cataloged;
  } else {
    spec = EntityTypeSpec::Make(name);
  }
  if (!spec.description) spec.description = BuiltinDescription(spec.name);
  return spec;
}

SubTypeSet ResolveSubtypes(const RunConfig& config, const EntityTypeSpec& target) {
  auto it = config.subtypes.find(target.name);
  SubTypeSet set = it != config.subtypes.end()
                       ? SubTypeSet(target.name, config.source, it->second)
                       : Decompose(target, config.source);
  return config.include_target ? EnsureTargetIncluded(set) : set;
}

std::vector<Mention> MakeMentions(const Document& doc,
                                  const std::vector<std::string>& surfaces,
                                  std::string_view origin,
                                  const NormalizationConfig& config) {
  std::vector<Mention> out;
  for (const std::string& raw : surfaces) {
    Mention m;
    m.surface = Trim(raw);
    m.normalized = Normalize(m.surface, config);
    if (m.normalized.empty()) continue;
    m.origins.insert(std::string(origin));
    m.spans = Ground(doc, m.surface, config);
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<Mention> MergeMentions(std::vector<Mention> mentions) {
  std::map<std::string, Mention> merged;
  for (Mention& m : mentions) {
    auto it = merged.find(m.normalized);
    if (it == merged.end()) {
      merged.emplace(m.normalized, std::move(m));
    } else {
      it->second.origins.insert(m.origins.begin(), m.origins.end());
    }
  }
  std::vector<Mention> out;
  out.reserve(merged.size());
  for (auto& [key, m] : merged) out.push_back(std::move(m));
  return out;
}

std::vector<Mention> RunBaseline(const Document& doc, const EntityTypeSpec& target,
                                 NerBackend& ner,
                                 const NormalizationConfig& config) {
  std::vector<std::string> surfaces;
  if (ner.multi_type()) {
    const SubTypeSet only(target.name, DecomposerSource::kCustom, {target.name});
    auto by_type = ner.ExtractMulti(doc, only);
    surfaces = by_type[target.name];
  } else {
    surfaces = ner.ExtractSingle(doc, target.name);
  }
  return MergeMentions(MakeMentions(doc, surfaces, target.name, config));
}

std::vector<Mention> RunEd(const Document& doc, const EntityTypeSpec& target,
                           const SubTypeSet& subtypes, NerBackend& ner,
                           const NormalizationConfig& config) {
  std::vector<Mention> all;
  if (ner.multi_type()) {
    for (const auto& [subtype, surfaces] : ner.ExtractMulti(doc, subtypes)) {
      for (Mention& m : MakeMentions(doc, surfaces, subtype, config)) {
        all.push_back(std::move(m));
      }
    }
    return MergeMentions(std::move(all));
  }
  std::optional<BackendError> first_error;
  size_t failures = 0;
  for (const std::string& subtype : subtypes.subtypes()) {
    try {
      for (Mention& m :
           MakeMentions(doc, ner.ExtractSingle(doc, subtype), subtype, config)) {
        all.push_back(std::move(m));
      }
    } catch (const BackendError& e) {
      ++failures;
      if (!first_error) first_error = e;
      Warn("document " + doc.id() + ", sub-type '" + subtype + "': " + e.what());
    }
  }
  if (failures == subtypes.size()) {
    throw BackendError("every sub-type query failed for '" + target.name +
                           "'; first error: " + first_error->what(),
                       first_error->status(), first_error->raw());
  }
  return MergeMentions(std::move(all));
}

std::vector<Mention> RunEdf(const Document& doc, const EntityTypeSpec& target,
                            RunMode mode, const SubTypeSet* subtypes,
                            NerBackend& ner, Filter* filter,
                            const NormalizationConfig& config,
                            std::vector<Mention>* candidates) {
  std::vector<Mention> mentions;
  if (UsesDecomposer(mode)) {
    if (!subtypes) throw ConfigError("mode " + std::string(ToString(mode)) +
                                     " needs sub-types");
    mentions = RunEd(doc, target, *subtypes, ner, config);
  } else {
    mentions = RunBaseline(doc, target, ner, config);
  }
  std::vector<Mention> out;
  if (UsesFilter(mode)) {
    if (!filter) throw ConfigError("mode " + std::string(ToString(mode)) +
                                   " needs a filter backend");
    out = filter->FilterSet(mentions, target, doc);
  } else {
    out = mentions;
  }
  if (candidates) *candidates = std::move(mentions);
  return out;
}

RunResult RunCorpus(const Corpus& corpus, const RunConfig& config,
                    NerBackend& ner, FilterModel* filter_model,
                    const RunHooks& hooks) {
  config.Validate();
  if (UsesFilter(config.mode) && !filter_model) {
    throw ConfigError("mode " + std::string(ToString(config.mode)) +
                      " needs a filter backend (filter.endpoint or filter.mock)");
  }
  std::vector<std::string> targets = config.targets;
  if (targets.empty()) {
    for (const EntityTypeSpec& t : corpus.catalog) targets.push_back(t.name);
  }
  if (targets.empty()) throw ConfigError("no target entity types");

  RunResult result;
  std::vector<EntityTypeSpec> specs;
  for (const std::string& name : targets) {
    specs.push_back(ResolveType(config, corpus, name));
    if (config.filter.prompt_variant == PromptVariant::kDescribed &&
        UsesFilter(config.mode) && !specs.back().description) {
      throw ConfigError("types." + name +
                        ".description is required by the described filter prompt");
    }
    if (UsesDecomposer(config.mode)) {
      result.subtypes.emplace(name, ResolveSubtypes(config, specs.back()));
    }
  }

  std::unique_ptr<Filter> filter;
  if (UsesFilter(config.mode)) {
    filter = std::make_unique<Filter>(config.filter, *filter_model);
  }
  std::unique_ptr<RunWriter> writer;
  if (!config.run_dir.empty()) {
    writer = std::make_unique<RunWriter>(
        config.run_dir, RunConfigJson(config, result.subtypes), config.resume);
  }

  struct Item {
    const Document* doc;
    const EntityTypeSpec* spec;
  };
  std::vector<Item> items;
  for (const Document& doc : corpus.documents) {
    for (const EntityTypeSpec& spec : specs) {
      if (writer && writer->completed().count({doc.id(), spec.name})) {
        result.records.push_back(writer->completed().at({doc.id(), spec.name}));
        ++result.resumed;
        continue;
      }
      items.push_back({&doc, &spec});
    }
  }

  std::mutex mu;
  std::atomic<size_t> next{0};
  std::atomic<bool> stopped{false};
  auto process = [&](const Item& item) {
    PredictionRecord record;
    record.doc_id = item.doc->id();
    record.entity_type = item.spec->name;
    record.gold = corpus.GoldFor(record.doc_id, record.entity_type);
    try {
      const SubTypeSet* subtypes = nullptr;
      if (auto it = result.subtypes.find(item.spec->name);
          it != result.subtypes.end()) {
        subtypes = &it->second;
      }
      RunEdf(*item.doc, *item.spec, config.mode, subtypes, ner, filter.get(),
             config.normalization, &record.mentions);
    } catch (const std::exception& e) {
      record.ok = false;
      record.error = e.what();
      record.mentions.clear();
      Warn("document " + record.doc_id + " (" + record.entity_type +
           ") failed: " + e.what());
    }
    if (writer) writer->Append(record);
    {
      std::lock_guard<std::mutex> lock(mu);
      result.records.push_back(record);
    }
    if (hooks.on_record) hooks.on_record(record);
  };
  auto worker = [&] {
    while (true) {
      if (stopped.load()) return;
      if (hooks.should_stop && hooks.should_stop()) {
        stopped = true;
        return;
      }
      const size_t i = next.fetch_add(1);
      if (i >= items.size()) return;
      process(items[i]);
    }
  };
  const int n_workers =
      std::max(1, std::min<int>(config.concurrency, static_cast<int>(items.size())));
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < n_workers; ++w) threads.emplace_back(worker);
    for (std::thread& t : threads) t.join();
  }

  Canonicalize(&result.records);
  result.interrupted = stopped.load();
  result.report = Evaluate(result.records, config.normalization);
  if (writer && !result.interrupted) writer->Finish(result.records, result.report);
  return result;
}

}  // namespace edf
