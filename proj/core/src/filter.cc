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
#include <map>
#include <utility>

#include "edf/error.h"
#include "edf/normalize.h"
#include "edf/prompts.h"

namespace edf {

std::string_view ToString(PromptVariant variant) {
  return variant == PromptVariant::kDescribed ? "described" : "default";
}

PromptVariant ParsePromptVariant(std::string_view name) {
  if (name == "default") return PromptVariant::kDefault;
  if (name == "described") return PromptVariant::kDescribed;
  throw ConfigError("unknown filter prompt '" + std::string(name) +
                    "' (expected default or described)");
}

void FilterConfig::Validate() const {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw ConfigError("filter threshold must be in [0, 1], got " +
                      std::to_string(threshold));
  }
  if (wrapper_template != "asclepius" && wrapper_template != "llama2") {
    throw ConfigError("unknown filter template '" + wrapper_template +
                      "' (expected asclepius or llama2)");
  }
}

std::optional<std::string> BuiltinDescription(std::string_view type) {
  static const std::map<std::string, std::string, std::less<>> kDescriptions = {
      {"treatment",
       "a procedure or substance given to a patient to resolve a medical "
       "problem"},
      {"problem", "an observation thought to be abnormal or caused by a disease"},
      {"test",
       "a procedure or measure to find more information about a medical "
       "problem"},
      {"clinical department", "a clinical unit or clinical service name"},
  };
  auto it = kDescriptions.find(FoldCase(Trim(type)));
  if (it == kDescriptions.end()) return std::nullopt;
  return it->second;
}

std::string RenderFilterQuestion(std::string_view entity,
                                 const EntityTypeSpec& type,
                                 PromptVariant variant) {
  if (variant == PromptVariant::kDefault) {
    return RenderPrompt("filter_default", {{"entity", std::string(entity)},
                                           {"entity_type", type.name}});
  }
  if (!type.description || type.description->empty()) {
    throw ConfigError("described filter prompt needs a description for type '" +
                      type.name + "'");
  }
  return RenderPrompt("filter_described", {{"entity", std::string(entity)},
                                           {"description", *type.description}});
}

std::string RenderFilterPrompt(std::string_view entity,
                               const EntityTypeSpec& type,
                               PromptVariant variant,
                               const ContextWindow& context,
                               std::string_view wrapper_template) {
  std::string question = RenderFilterQuestion(entity, type, variant);
  if (context.text.empty()) return question;
  if (wrapper_template == "asclepius") {
    return RenderPrompt("asclepius",
                        {{"input", context.text}, {"instruction", question}});
  }
  if (wrapper_template == "llama2") {
    return RenderPrompt("llama2",
                        {{"instruction", context.text + "\n\n" + question}});
  }
  throw ConfigError("unknown filter template '" + std::string(wrapper_template) +
                    "'");
}

double ProbabilityNo(const YesNoScores& scores) {
  // Logistic form of the two-way softmax; stable for large magnitudes.
  const double d = scores.lp_yes - scores.lp_no;
  if (std::isnan(d)) return 0.5;
  return 1.0 / (1.0 + std::exp(d));
}

bool ApplyThreshold(Answer answer, double p_no, double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw ConfigError("threshold must be in [0, 1], got " +
                      std::to_string(threshold));
  }
  return !(answer == Answer::kNo && p_no >= threshold);
}

FilterVerdict MakeVerdict(const YesNoScores& scores, double threshold) {
  FilterVerdict verdict;
  verdict.answer = ParseAnswer(ArgmaxYesNo(scores));
  verdict.p_no = ProbabilityNo(scores);
  verdict.accepted = ApplyThreshold(verdict.answer, verdict.p_no, threshold);
  return verdict;
}

LlmFilterModel::LlmFilterModel(BackendDescriptor descriptor,
                               CompletionClient& client)
    : descriptor_(std::move(descriptor)), client_(client) {}

YesNoScores LlmFilterModel::Score(const FilterQuery& query) {
  CompletionRequest request = descriptor_.decoding;
  request.prompt = query.prompt;
  request.constraint = Constraint::kYesNo;
  request.want_logprobs = true;
  CompletionResponse response = client_.Complete(request);
  const std::string answer = Trim(response.text);
  if (answer != "Yes" && answer != "No") {
    throw BackendError("filter output is not Yes/No: '" + response.text + "'", 0,
                       response.text);
  }
  return YesNoFromResponse(response);
}

Filter::Filter(FilterConfig config, FilterModel& model)
    : config_(std::move(config)), model_(model) {
  config_.Validate();
}

FilterVerdict Filter::Classify(const Document& doc, const Mention& mention,
                               const EntityTypeSpec& type) {
  return Classify(doc, mention, type,
                  ContextFor(doc, mention, config_.context_mode));
}

FilterVerdict Filter::Classify(const Document& doc, const Mention& mention,
                               const EntityTypeSpec& type,
                               const ContextWindow& context) {
  FilterQuery query;
  query.doc = &doc;
  query.entity = mention.surface;
  query.type = &type;
  query.context = &context;
  query.prompt = RenderFilterPrompt(mention.surface, type,
                                    config_.prompt_variant, context,
                                    config_.wrapper_template);
  return MakeVerdict(model_.Score(query), config_.threshold);
}

std::vector<Mention> Filter::FilterSet(std::vector<Mention>& mentions,
                                       const EntityTypeSpec& type,
                                       const Document& doc) {
  std::map<std::pair<std::string, std::string>, FilterVerdict> cache;
  std::vector<Mention> accepted;
  for (Mention& mention : mentions) {
    const ContextWindow context = ContextFor(doc, mention, config_.context_mode);
    auto key = std::make_pair(mention.normalized, context.text);
    auto it = cache.find(key);
    if (it == cache.end()) {
      it = cache.emplace(std::move(key), Classify(doc, mention, type, context))
               .first;
    }
    mention.verdict = it->second;
    if (it->second.accepted) accepted.push_back(mention);
  }
  return accepted;
}

}  // namespace edf
