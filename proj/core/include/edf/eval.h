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

#ifndef EDF_EVAL_H_
#define EDF_EVAL_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "edf/types.h"

namespace edf {

struct MatchCounts {
  int64_t tp = 0;
  int64_t fp = 0;
  int64_t fn = 0;

  MatchCounts& operator+=(const MatchCounts& other) {
    tp += other.tp;
    fp += other.fp;
    fn += other.fn;
    return *this;
  }
  friend bool operator==(const MatchCounts&, const MatchCounts&) = default;
};

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  friend bool operator==(const Prf&, const Prf&) = default;
};

// Zero whenever a denominator is zero.
Prf ComputePrf(const MatchCounts& counts);

// Multiset matching on normalized surfaces:
// tp = sum over s of min(#preds(s), #golds(s)).
MatchCounts ExactMatch(const std::vector<std::string>& preds,
                       const std::vector<std::string>& golds,
                       const NormalizationConfig& config = {});
MatchCounts ExactMatch(const std::vector<Mention>& preds,
                       const std::vector<GoldEntity>& golds,
                       const NormalizationConfig& config = {});

// Model output and gold for one (document, entity type) pair.
struct PredictionRecord {
  std::string doc_id;
  std::string entity_type;
  bool ok = true;
  std::string error;
  std::vector<GoldEntity> gold;
  // Pre-filter mentions; filtered runs attach verdicts.
  std::vector<Mention> mentions;

  // Mentions without a verdict or with an accepting one.
  std::vector<Mention> Final() const;
  // Final() with acceptance recomputed at threshold.
  std::vector<Mention> FinalAt(double threshold) const;

  friend bool operator==(const PredictionRecord&,
                         const PredictionRecord&) = default;
};

struct EvalRow {
  // Entity type or document id.
  std::string key;
  MatchCounts counts;
  Prf metrics;

  friend bool operator==(const EvalRow&, const EvalRow&) = default;
};

struct EvalFailure {
  std::string doc_id;
  std::string entity_type;
  std::string error;

  friend bool operator==(const EvalFailure&, const EvalFailure&) = default;
};

struct EvalReport {
  MatchCounts counts;
  Prf metrics;
  std::vector<EvalRow> per_type;
  std::vector<EvalRow> per_document;
  // Failed pairs are listed here and left out of the counts.
  std::vector<EvalFailure> failures;

  std::string ToJson() const;
  static EvalReport FromJson(std::string_view text);

  friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

// Scores the records' final mentions.
EvalReport Evaluate(const std::vector<PredictionRecord>& records,
                    const NormalizationConfig& config = {});
// Scores with acceptance recomputed at threshold.
EvalReport EvaluateAt(const std::vector<PredictionRecord>& records,
                      double threshold, const NormalizationConfig& config = {});

struct AbsenceReport {
  int64_t n_gold = 0;
  int64_t n_fully_absent = 0;
  // n_fully_absent / n_gold, 0 without golds.
  double ratio = 0.0;
  std::vector<std::string> absent;

  friend bool operator==(const AbsenceReport&, const AbsenceReport&) = default;
};

// A gold is fully absent when no prediction shares a word token with it.
bool IsFullyAbsent(std::string_view gold, const std::vector<std::string>& preds,
                   const NormalizationConfig& config = {});
AbsenceReport FullyAbsent(const std::vector<std::string>& golds,
                          const std::vector<std::string>& preds,
                          const NormalizationConfig& config = {});
AbsenceReport FullyAbsent(const std::vector<PredictionRecord>& records,
                          const NormalizationConfig& config = {});

struct PolarityReport {
  int64_t positive = 0;
  int64_t negative = 0;
  int64_t unspecified = 0;

  int64_t total() const { return positive + negative + unspecified; }
  friend bool operator==(const PolarityReport&, const PolarityReport&) = default;
};

// Counts golds whose normalized surface matches a pre-filter mention that
// the filter did not accept, by gold polarity. Throws edf::Error when no
// mention carries a verdict.
PolarityReport PolarityBreakdown(const std::vector<PredictionRecord>& records,
                                 const NormalizationConfig& config = {});

struct SweepRow {
  double tau = 0.0;
  MatchCounts counts;
  Prf metrics;
  int64_t accepted = 0;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

// "start:stop:step" (inclusive of stop) or a comma-separated list. Values
// must lie in [0, 1].
std::vector<double> ParseGrid(std::string_view spec);

// Re-scores stored verdicts at each threshold. Throws edf::Error when the
// records carry no verdicts.
std::vector<SweepRow> SweepThreshold(const std::vector<PredictionRecord>& records,
                                     const std::vector<double>& grid,
                                     const NormalizationConfig& config = {});

// Header "tau,precision,recall,f1".
void WriteSweepCsv(const std::vector<SweepRow>& rows, std::ostream& out);

// Shortest decimal form that reads back to the same double.
std::string FormatDouble(double value);

}  // namespace edf

#endif  // EDF_EVAL_H_
