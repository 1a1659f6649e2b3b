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

#include "edf/mock_backends.h"

#include <algorithm>
#include <cmath>

#include "edf/context.h"
#include "edf/normalize.h"
#include "edf/synthetic.h"
#include "hash.h"

namespace edf {

ScriptedCompletionClient::ScriptedCompletionClient(Script script)
    : script_(std::move(script)) {}

CompletionResponse ScriptedCompletionClient::Complete(
    const CompletionRequest& request) {
  request.Validate();
  ++calls_;
  {
    std::lock_guard<std::mutex> lock(mu_);
    prompts_.push_back(request.prompt);
  }
  CompletionResponse response = script_(request);
  if (request.constraint == Constraint::kYesNo) {
    const YesNoScores scores = YesNoFromResponse(response);
    response.text = std::string(ArgmaxYesNo(scores));
    response.first_token_candidates =
        std::map<std::string, double>{{"Yes", scores.lp_yes}, {"No", scores.lp_no}};
  }
  return response;
}

std::vector<std::string> ScriptedCompletionClient::prompts() const {
  std::lock_guard<std::mutex> lock(mu_);
  return prompts_;
}

CannedCompletionClient::CannedCompletionClient(CompletionResponse response)
    : ScriptedCompletionClient(
          [response](const CompletionRequest&) { return response; }) {}

CannedCompletionClient::CannedCompletionClient(std::string text)
    : CannedCompletionClient(CompletionResponse{std::move(text), {}, 1}) {}

GazetteerNerBackend::GazetteerNerBackend(const Gazetteer& gazetteer,
                                         GazetteerMockOptions options)
    : gazetteer_(gazetteer), options_(options) {}

std::vector<std::string> GazetteerNerBackend::Lookup(
    const Document& doc, std::string_view subtype) const {
  std::vector<std::pair<CharSpan, std::string>> hits;
  auto add = [&](const std::string& surface) {
    auto spans = Ground(doc, surface, options_.normalization);
    if (!spans.empty()) hits.emplace_back(spans.front(), doc.Slice(spans.front()));
  };
  if (const auto* surfaces = gazetteer_.Surfaces(subtype)) {
    for (const std::string& surface : *surfaces) add(surface);
  }
  if (options_.contamination_rate > 0.0) {
    if (const auto* noise = gazetteer_.Contamination(subtype)) {
      const std::string key = FoldCase(subtype);
      for (const std::string& surface : *noise) {
        const double u = internal::UnitInterval(
            internal::StableHash({doc.id(), key, surface}, options_.seed));
        if (u < options_.contamination_rate) add(surface);
      }
    }
  }
  std::sort(hits.begin(), hits.end());
  std::vector<std::string> out;
  out.reserve(hits.size());
  for (auto& [span, text] : hits) out.push_back(std::move(text));
  return out;
}

std::vector<std::string> GazetteerNerBackend::ExtractSingle(
    const Document& doc, std::string_view subtype) {
  ++calls_;
  return Lookup(doc, subtype);
}

std::map<std::string, std::vector<std::string>> GazetteerNerBackend::ExtractMulti(
    const Document& doc, const SubTypeSet& subtypes) {
  ++calls_;
  std::map<std::string, std::vector<std::string>> out;
  for (const std::string& subtype : subtypes.subtypes()) {
    out[subtype] = Lookup(doc, subtype);
  }
  return out;
}

YesNoScores MockFilterModel::Score(const FilterQuery& query) {
  ++calls_;
  return DoScore(query);
}

YesNoScores MockFilterModel::FromProbabilityNo(double p) {
  return {std::log1p(-p), std::log(p)};
}

namespace {

bool IsGold(const Corpus& corpus, const FilterQuery& query,
            const NormalizationConfig& normalization) {
  const std::string entity = Normalize(query.entity, normalization);
  for (const GoldEntity& gold : corpus.GoldFor(query.doc->id(), query.type->name)) {
    if (Normalize(gold.surface, normalization) == entity) return true;
  }
  return false;
}

constexpr double kConfident = 0.95;

}  // namespace

OracleFilterModel::OracleFilterModel(const Corpus& corpus,
                                     NormalizationConfig normalization)
    : corpus_(corpus), normalization_(normalization) {}

YesNoScores OracleFilterModel::DoScore(const FilterQuery& query) {
  return FromProbabilityNo(IsGold(corpus_, query, normalization_)
                               ? 1.0 - kConfident
                               : kConfident);
}

StochasticFilterModel::StochasticFilterModel(uint64_t seed, const Corpus* corpus,
                                             NormalizationConfig normalization)
    : seed_(seed), corpus_(corpus), normalization_(normalization) {}

YesNoScores StochasticFilterModel::DoScore(const FilterQuery& query) {
  const std::string context = query.context ? query.context->text : "";
  const double u = internal::UnitInterval(internal::StableHash(
      {query.doc->id(), query.entity, query.type->name, context}, seed_));
  // Keep p_no away from 0 and 1.
  double p = 0.01 + 0.98 * u;
  if (corpus_) {
    p = IsGold(*corpus_, query, normalization_) ? 0.01 + 0.69 * u
                                                : 0.30 + 0.69 * u;
  }
  return FromProbabilityNo(p);
}

YesNoScores PolarityFilterModel::DoScore(const FilterQuery& query) {
  return FromProbabilityNo(IsNegatedIn(*query.doc, query.entity) ? kConfident
                                                                 : 1.0 - kConfident);
}

}  // namespace edf
