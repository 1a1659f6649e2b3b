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

#include "edf/backend.h"

#include "edf/error.h"
#include "edf/log.h"
#include "edf/normalize.h"
#include "edf/parsers.h"
#include "edf/prompts.h"

namespace edf {

std::string_view ToString(BackendKind kind) {
  switch (kind) {
    case BackendKind::kSingleType:
      return "single_type";
    case BackendKind::kMultiType:
      return "multi_type";
    case BackendKind::kClassifier:
      return "classifier";
    case BackendKind::kMock:
      return "mock";
  }
  return "mock";
}

BackendKind ParseBackendKind(std::string_view name) {
  for (auto kind : {BackendKind::kSingleType, BackendKind::kMultiType,
                    BackendKind::kClassifier, BackendKind::kMock}) {
    if (name == ToString(kind)) return kind;
  }
  throw ConfigError("unknown backend kind '" + std::string(name) +
                    "' (expected single_type, multi_type, classifier or mock)");
}

void CompletionRequest::Validate() const {
  if (!(temperature >= 0.0)) {
    throw ConfigError("temperature must be >= 0, got " +
                      std::to_string(temperature));
  }
  if (!(top_p > 0.0 && top_p <= 1.0)) {
    throw ConfigError("top_p must be in (0, 1], got " + std::to_string(top_p));
  }
  if (max_new_tokens < 1) {
    throw ConfigError("max_new_tokens must be >= 1, got " +
                      std::to_string(max_new_tokens));
  }
}

BackendDescriptor BackendDescriptor::NerDefaults(BackendKind kind) {
  BackendDescriptor d;
  d.kind = kind;
  d.template_id = kind == BackendKind::kMultiType ? "gner" : "uniner";
  d.decoding.temperature = 0.0;
  d.decoding.top_p = 1.0;
  d.decoding.max_new_tokens = 512;
  return d;
}

BackendDescriptor BackendDescriptor::FilterDefaults() {
  BackendDescriptor d;
  d.kind = BackendKind::kClassifier;
  d.template_id = "asclepius";
  d.decoding.temperature = 0.2;
  d.decoding.top_p = 0.95;
  d.decoding.max_new_tokens = 1;
  d.decoding.want_logprobs = true;
  d.decoding.constraint = Constraint::kYesNo;
  return d;
}

std::string_view ArgmaxYesNo(const YesNoScores& scores) {
  return scores.lp_yes > scores.lp_no ? "Yes" : "No";
}

YesNoScores YesNoFromResponse(const CompletionResponse& response) {
  if (!response.first_token_candidates) {
    throw BackendError("Yes/No log-probabilities requested but absent", 0,
                       response.text);
  }
  const auto& candidates = *response.first_token_candidates;
  auto yes = candidates.find("Yes");
  auto no = candidates.find("No");
  if (yes == candidates.end() || no == candidates.end()) {
    throw BackendError("response lacks a log-probability for Yes or No", 0,
                       response.text);
  }
  return {yes->second, no->second};
}

LlmNerBackend::LlmNerBackend(BackendDescriptor descriptor,
                             CompletionClient& client)
    : descriptor_(std::move(descriptor)), client_(client) {
  if (descriptor_.kind != BackendKind::kSingleType &&
      descriptor_.kind != BackendKind::kMultiType) {
    throw ConfigError("NER backend must be single_type or multi_type, got " +
                      std::string(ToString(descriptor_.kind)));
  }
  if (descriptor_.template_id.empty()) {
    descriptor_.template_id = BackendDescriptor::NerDefaults(descriptor_.kind).template_id;
  }
  TemplateText(descriptor_.template_id);  // fail fast on unknown ids
  descriptor_.decoding.Validate();
}

bool LlmNerBackend::multi_type() const {
  return descriptor_.kind == BackendKind::kMultiType;
}

std::vector<std::string> LlmNerBackend::Inputs(const Document& doc) const {
  if (!descriptor_.per_sentence) return {doc.text()};
  std::vector<std::string> inputs;
  for (const CharSpan& s : doc.sentences()) inputs.push_back(doc.Slice(s));
  return inputs;
}

std::string LlmNerBackend::Query(const std::string& prompt) {
  CompletionRequest request = descriptor_.decoding;
  request.prompt = prompt;
  request.constraint = Constraint::kNone;
  return client_.Complete(request).text;
}

std::vector<std::string> LlmNerBackend::ExtractSingle(
    const Document& doc, std::string_view subtype) {
  if (descriptor_.kind != BackendKind::kSingleType) {
    throw ConfigError("single-type extraction needs a single_type backend");
  }
  const std::string instruction =
      NerInstruction(descriptor_.template_id, {std::string(subtype)});
  std::vector<std::string> surfaces;
  for (const std::string& input : Inputs(doc)) {
    if (Trim(input).empty()) continue;
    const std::string raw = Query(RenderPrompt(
        descriptor_.template_id, {{"input", input}, {"instruction", instruction}}));
    for (std::string& s : ParseEntityList(raw)) surfaces.push_back(std::move(s));
  }
  return surfaces;
}

std::map<std::string, std::vector<std::string>> LlmNerBackend::ExtractMulti(
    const Document& doc, const SubTypeSet& subtypes) {
  if (descriptor_.kind != BackendKind::kMultiType) {
    throw ConfigError("multi-type extraction needs a multi_type backend");
  }
  const std::string instruction =
      NerInstruction(descriptor_.template_id, subtypes.subtypes());
  std::map<std::string, std::vector<std::string>> out;
  for (const std::string& input : Inputs(doc)) {
    if (Trim(input).empty()) continue;
    const std::string raw = Query(RenderPrompt(
        descriptor_.template_id, {{"input", input}, {"instruction", instruction}}));
    BioResponse parsed = ParseBioResponse(raw);
    for (const std::string& w : parsed.warnings) {
      Warn("document " + doc.id() + ": " + w);
    }
    for (TaggedEntity& e : parsed.entities) {
      const std::string folded = FoldCase(e.type);
      const std::string* label = nullptr;
      for (const std::string& s : subtypes.subtypes()) {
        if (FoldCase(s) == folded) label = &s;
      }
      if (label == nullptr) {
        Warn("document " + doc.id() + ": dropping '" + e.surface +
             "' with label '" + e.type + "' outside the requested sub-types");
        continue;
      }
      out[*label].push_back(std::move(e.surface));
    }
  }
  return out;
}

}  // namespace edf
