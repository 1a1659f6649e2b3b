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

#ifndef EDF_RUN_STORE_H_
#define EDF_RUN_STORE_H_

#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "edf/eval.h"
#include "edf/types.h"

namespace edf {

// One line of verdicts.jsonl.
struct VerdictRecord {
  std::string doc_id;
  std::string surface;
  std::string entity_type;
  Answer answer = Answer::kYes;
  double p_no = 0.0;
  std::string context_mode;

  friend bool operator==(const VerdictRecord&, const VerdictRecord&) = default;
};

// Contents of a run directory:
//   config.json        run configuration (JSON object)
//   predictions.jsonl  one line per (doc_id, entity_type)
//   verdicts.jsonl     one line per filtered mention
//   report.json        EvalReport
struct RunArtifacts {
  std::string config_json = "{}";
  std::vector<PredictionRecord> predictions;
  EvalReport report;

  // Mode and normalization recorded in config_json.
  std::string mode() const;
  NormalizationConfig normalization() const;

  std::vector<VerdictRecord> Verdicts() const;

  friend bool operator==(const RunArtifacts&, const RunArtifacts&) = default;
};

// Sorted by doc id then entity type; mentions by normalized surface.
void Canonicalize(std::vector<PredictionRecord>* records);

void PersistRun(const std::string& dir, const RunArtifacts& run);

// Throws edf::Error naming the first missing file ("verdicts.jsonl
// missing"), or the file and line of a corrupt record.
RunArtifacts LoadRun(const std::string& dir);

// Incremental writer for a run in progress. Appends are flushed line by
// line so an interrupted run can resume from what reached the disk.
class RunWriter {
 public:
  // Creates dir. With resume set, reads the records already in dir (a
  // truncated last line is ignored) and throws edf::ConfigError if the
  // stored config differs from config_json (the "concurrency" key aside).
  // Without resume, existing run files are replaced.
  RunWriter(std::string dir, std::string config_json, bool resume);

  // Successfully completed (doc_id, entity_type) pairs from earlier runs.
  const std::map<std::pair<std::string, std::string>, PredictionRecord>&
  completed() const {
    return completed_;
  }

  // Thread-safe.
  void Append(const PredictionRecord& record);

  // Rewrites the directory canonically with the given records and report.
  void Finish(std::vector<PredictionRecord> records, const EvalReport& report);

  const std::string& dir() const { return dir_; }

 private:
  std::string dir_;
  std::string config_json_;
  std::string context_mode_;
  std::map<std::pair<std::string, std::string>, PredictionRecord> completed_;
  std::mutex mu_;
};

}  // namespace edf

#endif  // EDF_RUN_STORE_H_
