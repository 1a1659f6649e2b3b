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

#ifndef EDF_MOCK_BACKENDS_H_
#define EDF_MOCK_BACKENDS_H_

#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "edf/backend.h"
#include "edf/corpus.h"
#include "edf/filter.h"
#include "edf/gazetteer.h"

namespace edf {

// Completion client answering from a function. Yes/No-constrained requests
// get text set to the argmax of the response's Yes/No candidates.
class ScriptedCompletionClient : public CompletionClient {
 public:
  using Script = std::function<CompletionResponse(const CompletionRequest&)>;

  explicit ScriptedCompletionClient(Script script);

  CompletionResponse Complete(const CompletionRequest& request) override;

  int64_t calls() const { return calls_.load(); }
  std::vector<std::string> prompts() const;

 private:
  Script script_;
  std::atomic<int64_t> calls_{0};
  mutable std::mutex mu_;
  std::vector<std::string> prompts_;
};

// Returns the same response to every request.
class CannedCompletionClient : public ScriptedCompletionClient {
 public:
  explicit CannedCompletionClient(CompletionResponse response);
  explicit CannedCompletionClient(std::string text);
};

struct GazetteerMockOptions {
  // Probability that a contamination surface present in the document is
  // returned for its sub-type.
  double contamination_rate = 0.0;
  uint64_t seed = 0;
  // Answer sub-type sets in one call (R*) instead of one call per sub-type.
  bool multi_type = false;
  NormalizationConfig normalization;
};

// NER backend that returns the gazetteer surfaces of the requested
// sub-type found in the document, ordered by first occurrence. The output
// is a deterministic function of (document, sub-type, seed).
class GazetteerNerBackend : public NerBackend {
 public:
  // The gazetteer must outlive this backend.
  GazetteerNerBackend(const Gazetteer& gazetteer,
                      GazetteerMockOptions options = {});

  bool multi_type() const override { return options_.multi_type; }
  std::vector<std::string> ExtractSingle(const Document& doc,
                                         std::string_view subtype) override;
  std::map<std::string, std::vector<std::string>> ExtractMulti(
      const Document& doc, const SubTypeSet& subtypes) override;

  int64_t calls() const { return calls_.load(); }

 private:
  std::vector<std::string> Lookup(const Document& doc,
                                  std::string_view subtype) const;

  const Gazetteer& gazetteer_;
  GazetteerMockOptions options_;
  std::atomic<int64_t> calls_{0};
};

// Filter models with known answers. All count their calls.
class MockFilterModel : public FilterModel {
 public:
  YesNoScores Score(const FilterQuery& query) final;
  int64_t calls() const { return calls_.load(); }

 protected:
  virtual YesNoScores DoScore(const FilterQuery& query) = 0;

  // Scores whose renormalized p_no equals p.
  static YesNoScores FromProbabilityNo(double p);

 private:
  std::atomic<int64_t> calls_{0};
};

class FixedFilterModel : public MockFilterModel {
 public:
  explicit FixedFilterModel(YesNoScores scores) : scores_(scores) {}

 protected:
  YesNoScores DoScore(const FilterQuery&) override { return scores_; }

 private:
  YesNoScores scores_;
};

// Yes iff the normalized entity is a gold surface of the queried type in
// the queried document.
class OracleFilterModel : public MockFilterModel {
 public:
  // The corpus must outlive this model.
  explicit OracleFilterModel(const Corpus& corpus,
                             NormalizationConfig normalization = {});

 protected:
  YesNoScores DoScore(const FilterQuery& query) override;

 private:
  const Corpus& corpus_;
  NormalizationConfig normalization_;
};

// Seeded pseudo-random p_no strictly inside (0, 1), a pure function of
// (seed, document, entity, type, context). With a corpus, gold entities lean
// towards Yes and others towards No.
class StochasticFilterModel : public MockFilterModel {
 public:
  explicit StochasticFilterModel(uint64_t seed, const Corpus* corpus = nullptr,
                                 NormalizationConfig normalization = {});

 protected:
  YesNoScores DoScore(const FilterQuery& query) override;

 private:
  uint64_t seed_;
  const Corpus* corpus_;
  NormalizationConfig normalization_;
};

// No iff the entity occurs right after a negation cue in the document.
class PolarityFilterModel : public MockFilterModel {
 protected:
  YesNoScores DoScore(const FilterQuery& query) override;
};

}  // namespace edf

#endif  // EDF_MOCK_BACKENDS_H_
