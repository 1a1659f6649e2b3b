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
#include <cstring>
#include <fstream>
#include <sstream>
#include <set>

#include "edf/context.h"
#include "edf/decomposer.h"
#include "edf/error.h"
#include "edf/http_client.h"
#include "edf/mock_backends.h"
#include "json.hpp"
#include "toml.hpp"

namespace edf::cli {
namespace {

std::string At(const toml::node& node) {
  const auto line = node.source().begin.line;
  return line > 0 ? "line " + std::to_string(line) + ": " : "";
}

// Typed access to one table with unknown-key checking.
class Section {
 public:
  Section(const toml::table* table, std::string name,
          std::set<std::string> allowed)
      : table_(table), name_(std::move(name)) {
    if (!table_) return;
    for (const auto& [key, node] : *table_) {
      if (!allowed.count(std::string(key.str()))) {
        throw ConfigError(At(node) + "unknown key " + name_ + "." +
                          std::string(key.str()));
      }
    }
  }

  const toml::node* Get(std::string_view key) const {
    return table_ ? table_->get(key) : nullptr;
  }

  template <typename T>
  void Read(std::string_view key, T* out) const {
    const toml::node* node = Get(key);
    if (!node) return;
    if constexpr (std::is_same_v<T, double>) {
      if (auto v = node->value<double>()) {
        *out = *v;
        return;
      }
    } else if constexpr (std::is_same_v<T, bool>) {
      if (auto v = node->value_exact<bool>()) {
        *out = *v;
        return;
      }
    } else if constexpr (std::is_integral_v<T>) {
      if (auto v = node->value_exact<int64_t>()) {
        *out = static_cast<T>(*v);
        return;
      }
    } else {
      if (auto v = node->value_exact<std::string>()) {
        *out = *v;
        return;
      }
    }
    throw ConfigError(At(*node) + name_ + "." + std::string(key) +
                      " has the wrong type");
  }

  void ReadList(std::string_view key, std::vector<std::string>* out) const {
    const toml::node* node = Get(key);
    if (!node) return;
    const toml::array* array = node->as_array();
    if (!array) {
      throw ConfigError(At(*node) + name_ + "." + std::string(key) +
                        " must be an array of strings");
    }
    out->clear();
    for (const toml::node& item : *array) {
      auto v = item.value_exact<std::string>();
      if (!v) {
        throw ConfigError(At(item) + name_ + "." + std::string(key) +
                          " must be an array of strings");
      }
      out->push_back(*v);
    }
  }

  template <typename Fn>
  void Parse(std::string_view key, Fn fn) const {
    const toml::node* node = Get(key);
    if (!node) return;
    auto v = node->value_exact<std::string>();
    if (!v) {
      throw ConfigError(At(*node) + name_ + "." + std::string(key) +
                        " must be a string");
    }
    try {
      fn(*v);
    } catch (const Error& e) {
      throw ConfigError(At(*node) + name_ + "." + std::string(key) + ": " +
                        e.what());
    }
  }

 private:
  const toml::table* table_;
  std::string name_;
};

const toml::table* Table(const toml::table& root, std::string_view name) {
  const toml::node* node = root.get(name);
  if (!node) return nullptr;
  if (!node->is_table()) throw ConfigError(At(*node) + std::string(name) + " must be a table");
  return node->as_table();
}

void ReadDescriptor(const Section& s, BackendDescriptor* d) {
  s.Parse("kind", [&](const std::string& v) { d->kind = ParseBackendKind(v); });
  s.Read("endpoint", &d->endpoint);
  s.Read("template", &d->template_id);
  s.Read("model", &d->model);
  s.Read("max_new_tokens", &d->decoding.max_new_tokens);
  s.Read("temperature", &d->decoding.temperature);
  s.Read("top_p", &d->decoding.top_p);
  s.Read("per_sentence", &d->per_sentence);
  s.Read("native_yes_no", &d->native_yes_no);
  s.Read("max_in_flight", &d->max_in_flight);
  s.Read("max_attempts", &d->retry.max_attempts);
  int64_t ms = -1;
  s.Read("backoff_ms", &ms);
  if (ms >= 0) d->retry.base_backoff = std::chrono::milliseconds(ms);
  ms = -1;
  s.Read("timeout_ms", &ms);
  if (ms >= 0) d->timeout = std::chrono::milliseconds(ms);
}

const std::set<std::string> kDescriptorKeys = {
    "kind",        "endpoint",      "template",     "model",
    "max_new_tokens", "temperature", "top_p",       "per_sentence",
    "native_yes_no",  "max_in_flight", "max_attempts", "backoff_ms",
    "timeout_ms"};

std::set<std::string> With(std::set<std::string> base,
                           std::initializer_list<std::string> extra) {
  base.insert(extra);
  return base;
}

}  // namespace

ToolConfig ParseToolConfig(std::string_view text, const std::string& origin) {
  toml::table root;
  try {
    root = toml::parse(text, origin);
  } catch (const toml::parse_error& e) {
    throw ConfigError(origin + ": line " +
                      std::to_string(e.source().begin.line) + ": " +
                      std::string(e.description()));
  }
  ToolConfig config;
  try {
    for (const auto& [key, node] : root) {
      static const std::set<std::string> kSections = {
          "run", "decomposer", "normalization", "ner", "filter", "types"};
      if (!kSections.count(std::string(key.str()))) {
        throw ConfigError(At(node) + "unknown section " + std::string(key.str()));
      }
    }
    RunConfig& run = config.run;

    Section r(Table(root, "run"), "run",
              {"mode", "targets", "concurrency", "resume"});
    r.Parse("mode", [&](const std::string& v) { run.mode = ParseRunMode(v); });
    r.ReadList("targets", &run.targets);
    r.Read("concurrency", &run.concurrency);
    r.Read("resume", &run.resume);

    const toml::table* dec_table = Table(root, "decomposer");
    Section d(dec_table, "decomposer",
              {"source", "include_target", "subtypes", "endpoint"});
    d.Parse("source", [&](const std::string& v) {
      run.source = ParseDecomposerSource(v);
    });
    d.Read("include_target", &run.include_target);
    d.Read("endpoint", &config.decomposer_endpoint);
    if (const toml::node* subtypes = d.Get("subtypes")) {
      const toml::table* t = subtypes->as_table();
      if (!t) throw ConfigError(At(*subtypes) + "decomposer.subtypes must be a table");
      for (const auto& [target, node] : *t) {
        const std::string name(target.str());
        if (auto path = node.value_exact<std::string>()) {
          config.subtype_files[name] = *path;
        } else if (const toml::array* array = node.as_array()) {
          std::vector<std::string> list;
          for (const toml::node& item : *array) {
            auto v = item.value_exact<std::string>();
            if (!v) {
              throw ConfigError(At(item) + "decomposer.subtypes." + name +
                                " must hold strings");
            }
            list.push_back(*v);
          }
          run.subtypes[name] = std::move(list);
        } else {
          throw ConfigError(At(node) + "decomposer.subtypes." + name +
                            " must be a file path or an array of strings");
        }
      }
    }

    Section n(Table(root, "normalization"), "normalization",
              {"lowercase", "collapse_whitespace", "strip_edge_punctuation"});
    n.Read("lowercase", &run.normalization.lowercase);
    n.Read("collapse_whitespace", &run.normalization.collapse_whitespace);
    n.Read("strip_edge_punctuation", &run.normalization.strip_edge_punctuation);

    Section ner(Table(root, "ner"), "ner",
                With(kDescriptorKeys, {"gazetteer", "contamination", "seed", "multi"}));
    ner.Parse("kind", [&](const std::string& v) {
      const BackendKind kind = ParseBackendKind(v);
      const BackendDescriptor defaults = BackendDescriptor::NerDefaults(
          kind == BackendKind::kMock ? BackendKind::kSingleType : kind);
      config.ner.descriptor = defaults;
      config.ner.descriptor.kind = kind;
    });
    ReadDescriptor(ner, &config.ner.descriptor);
    ner.Read("gazetteer", &config.ner.gazetteer);
    ner.Read("contamination", &config.ner.contamination);
    ner.Read("seed", &config.ner.seed);
    ner.Read("multi", &config.ner.multi);

    Section f(Table(root, "filter"), "filter",
              With(kDescriptorKeys,
                   {"mock", "seed", "bias", "context", "prompt", "threshold"}));
    ReadDescriptor(f, &config.filter.descriptor);
    f.Read("mock", &config.filter.mock);
    f.Read("seed", &config.filter.seed);
    f.Read("bias", &config.filter.bias);
    f.Parse("context", [&](const std::string& v) {
      run.filter.context_mode = ParseContextMode(v);
    });
    f.Parse("prompt", [&](const std::string& v) {
      run.filter.prompt_variant = ParsePromptVariant(v);
    });
    f.Read("threshold", &run.filter.threshold);
    if (!config.filter.descriptor.template_id.empty()) {
      run.filter.wrapper_template = config.filter.descriptor.template_id;
    }

    if (const toml::table* types = Table(root, "types")) {
      for (const auto& [name, node] : *types) {
        const toml::table* t = node.as_table();
        if (!t) throw ConfigError(At(node) + "types." + std::string(name.str()) +
                                  " must be a table");
        Section ts(t, "types." + std::string(name.str()),
                   {"description", "requires_context"});
        std::string description;
        bool requires_context = false;
        ts.Read("description", &description);
        ts.Read("requires_context", &requires_context);
        run.types[std::string(name.str())] = EntityTypeSpec::Make(
            name.str(),
            description.empty() ? std::nullopt : std::optional(description),
            requires_context);
      }
    }
    run.filter.Validate();
  } catch (const ConfigError& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  return config;
}

ToolConfig LoadToolConfig(const std::string& path) {
  if (path.empty()) return ToolConfig{};
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseToolConfig(buffer.str(), path);
}

void ApplyEnvironment(ToolConfig* config) {
  if (const char* v = std::getenv("EDF_ENDPOINT"); v && *v) {
    config->ner.descriptor.endpoint = v;
  }
  if (const char* v = std::getenv("EDF_FILTER_ENDPOINT"); v && *v) {
    config->filter.descriptor.endpoint = v;
  }
  if (const char* v = std::getenv("EDF_TIMEOUT_MS"); v && *v) {
    char* end = nullptr;
    const long long ms = std::strtoll(v, &end, 10);
    if (*end != '\0' || ms <= 0) {
      throw ConfigError("EDF_TIMEOUT_MS must be a positive integer, got '" +
                        std::string(v) + "'");
    }
    config->ner.descriptor.timeout = std::chrono::milliseconds(ms);
    config->filter.descriptor.timeout = std::chrono::milliseconds(ms);
  }
}

void ResolveSubtypeFiles(ToolConfig* config) {
  for (const auto& [target, path] : config->subtype_files) {
    config->run.subtypes[target] = LoadCustomSubtypes(path, target).subtypes();
  }
}

namespace {

nlohmann::json DescriptorJson(const BackendDescriptor& d) {
  return {{"kind", std::string(ToString(d.kind))},
          {"endpoint", d.endpoint},
          {"template", d.template_id},
          {"model", d.model},
          {"max_new_tokens", d.decoding.max_new_tokens},
          {"temperature", d.decoding.temperature},
          {"top_p", d.decoding.top_p},
          {"per_sentence", d.per_sentence},
          {"native_yes_no", d.native_yes_no}};
}

}  // namespace

std::string BackendsJson(const ToolConfig& config) {
  nlohmann::json j;
  j["ner"] = DescriptorJson(config.ner.descriptor);
  if (config.ner.descriptor.kind == BackendKind::kMock) {
    j["ner"]["gazetteer"] = config.ner.gazetteer.empty() ? "builtin" : config.ner.gazetteer;
    j["ner"]["contamination"] = config.ner.contamination;
    j["ner"]["seed"] = config.ner.seed;
    j["ner"]["multi"] = config.ner.multi;
  }
  if (UsesFilter(config.run.mode)) {
    j["filter"] = DescriptorJson(config.filter.descriptor);
    if (config.filter.descriptor.kind == BackendKind::kMock) {
      j["filter"]["mock"] = config.filter.mock;
      j["filter"]["seed"] = config.filter.seed;
      j["filter"]["bias"] = config.filter.bias;
    }
  }
  return j.dump();
}

Backends::Backends(const ToolConfig& config, const Corpus* corpus,
                   bool with_filter) {
  if (with_filter) {
    const FilterSettings& f = config.filter;
    if (f.descriptor.kind == BackendKind::kMock) {
      const std::string& mock = f.mock;
      if (mock == "oracle" || (mock == "stochastic" && f.bias)) {
        if (!corpus) throw ConfigError("filter.mock = \"" + mock + "\" needs a corpus");
      }
      if (mock == "oracle") {
        filter_ = std::make_unique<OracleFilterModel>(*corpus, config.run.normalization);
      } else if (mock == "stochastic") {
        filter_ = std::make_unique<StochasticFilterModel>(
            f.seed, f.bias ? corpus : nullptr, config.run.normalization);
      } else if (mock == "polarity") {
        filter_ = std::make_unique<PolarityFilterModel>();
      } else if (mock == "yes") {
        filter_ = std::make_unique<FixedFilterModel>(YesNoScores{-0.1, -2.4});
      } else if (mock == "no") {
        filter_ = std::make_unique<FixedFilterModel>(YesNoScores{-2.4, -0.1});
      } else if (mock.empty()) {
        throw ConfigError("filter.mock is not set (oracle, stochastic, polarity, yes or no)");
      } else {
        throw ConfigError("unknown filter.mock '" + mock +
                          "' (expected oracle, stochastic, polarity, yes or no)");
      }
    } else if (f.descriptor.kind == BackendKind::kClassifier) {
      if (f.descriptor.endpoint.empty()) {
        throw ConfigError("filter.endpoint is not set (or use filter.kind = \"mock\")");
      }
      filter_client_ = std::make_unique<HttpCompletionClient>(f.descriptor);
      filter_ = std::make_unique<LlmFilterModel>(f.descriptor, *filter_client_);
    } else {
      throw ConfigError("filter.kind must be classifier or mock");
    }
  }

  const NerSettings& ner = config.ner;
  if (ner.descriptor.kind == BackendKind::kMock) {
    gazetteer_ = ner.gazetteer.empty() ? Gazetteer::Builtin()
                                       : Gazetteer::Load(ner.gazetteer);
    GazetteerMockOptions options;
    options.contamination_rate = ner.contamination;
    options.seed = ner.seed;
    options.multi_type = ner.multi;
    options.normalization = config.run.normalization;
    ner_ = std::make_unique<GazetteerNerBackend>(gazetteer_, options);
  } else if (ner.descriptor.kind == BackendKind::kSingleType ||
             ner.descriptor.kind == BackendKind::kMultiType) {
    if (ner.descriptor.endpoint.empty()) {
      throw ConfigError("ner.endpoint is not set (or use ner.kind = \"mock\")");
    }
    ner_client_ = std::make_unique<HttpCompletionClient>(ner.descriptor);
    ner_ = std::make_unique<LlmNerBackend>(ner.descriptor, *ner_client_);
  } else {
    throw ConfigError("ner.kind must be single_type, multi_type or mock");
  }
}

Backends::~Backends() = default;

Corpus LoadCorpus(const std::string& path) {
  for (const char* ext : {".bio", ".conll", ".tsv"}) {
    if (path.size() >= std::strlen(ext) &&
        path.compare(path.size() - std::strlen(ext), std::string::npos, ext) == 0) {
      return LoadBio(path);
    }
  }
  return LoadJsonl(path);
}

}  // namespace edf::cli
