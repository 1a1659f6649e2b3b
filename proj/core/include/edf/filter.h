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

#ifndef EDF_FILTER_H_
#define EDF_FILTER_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "edf/backend.h"
#include "edf/context.h"
#include "edf/types.h"

namespace edf {

enum class PromptVariant { kDefault, kDescribed };

std::string_view ToString(PromptVariant variant);
PromptVariant ParsePromptVariant(std::string_view name);

struct FilterConfig {
  ContextMode context_mode = ContextMode::kNone;
  PromptVariant prompt_variant = PromptVariant::kDefault;
  // Minimum p_no needed to reject a "No" answer.
  double threshold = 0.0;
  // Wrapper used when the context is non-empty: asclepius or llama2.
  std::string wrapper_template = "asclepius";

  // Throws edf::ConfigError on a threshold outside [0, 1] or an unknown
  // wrapper.
  void Validate() const;
};

// Descriptions for treatment, problem, test and clinical department.
std::optional<std::string> BuiltinDescription(std::string_view type);

// The bare question, e.g.
//   Can 'aspirin' be considered a/an treatment? Answer with yes or no.
// Throws edf::ConfigError for the described variant without a description.
std::string RenderFilterQuestion(std::string_view entity,
                                 const EntityTypeSpec& type,
                                 PromptVariant variant);

// The question alone for an empty context; otherwise the question wrapped
// in wrapper_template with the context as the document.
std::string RenderFilterPrompt(std::string_view entity,
                               const EntityTypeSpec& type,
                               PromptVariant variant,
                               const ContextWindow& context,
                               std::string_view wrapper_template = "asclepius");

// p_no = exp(lp_no) / (exp(lp_yes) + exp(lp_no)).
double ProbabilityNo(const YesNoScores& scores);

// Rejected iff answer is no and p_no >= threshold. Throws edf::ConfigError
// for a threshold outside [0, 1].
bool ApplyThreshold(Answer answer, double p_no, double threshold);

// Answer by argmax (ties to no), p_no and acceptance under threshold.
FilterVerdict MakeVerdict(const YesNoScores& scores, double threshold);

struct FilterQuery {
  const Document* doc = nullptr;
  std::string entity;
  const EntityTypeSpec* type = nullptr;
  const ContextWindow* context = nullptr;
  std::string prompt;
};

// Yes/No classifier behind the filter.
class FilterModel {
 public:
  virtual ~FilterModel() = default;
  virtual YesNoScores Score(const FilterQuery& query) = 0;
};

// Classifier served over a completion client with the Yes/No constraint.
class LlmFilterModel : public FilterModel {
 public:
  // The client must outlive this model.
  LlmFilterModel(BackendDescriptor descriptor, CompletionClient& client);
  YesNoScores Score(const FilterQuery& query) override;

 private:
  BackendDescriptor descriptor_;
  CompletionClient& client_;
};

class Filter {
 public:
  // The model must outlive this filter.
  Filter(FilterConfig config, FilterModel& model);

  const FilterConfig& config() const { return config_; }

  FilterVerdict Classify(const Document& doc, const Mention& mention,
                         const EntityTypeSpec& type);

  // Attaches a verdict to every mention and returns the accepted ones.
  // Each distinct (normalized surface, context text) pair is classified
  // once.
  std::vector<Mention> FilterSet(std::vector<Mention>& mentions,
                                 const EntityTypeSpec& type,
                                 const Document& doc);

 private:
  FilterVerdict Classify(const Document& doc, const Mention& mention,
                         const EntityTypeSpec& type,
                         const ContextWindow& context);

  FilterConfig config_;
  FilterModel& model_;
};

}  // namespace edf

#endif  // EDF_FILTER_H_
