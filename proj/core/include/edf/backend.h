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

#ifndef EDF_BACKEND_H_
#define EDF_BACKEND_H_

#include <chrono>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "edf/types.h"

namespace edf {

enum class BackendKind { kSingleType, kMultiType, kClassifier, kMock };

std::string_view ToString(BackendKind kind);
BackendKind ParseBackendKind(std::string_view name);

enum class Constraint { kNone, kYesNo };

struct CompletionRequest {
  std::string prompt;
  int max_new_tokens = 256;
  double temperature = 0.0;
  double top_p = 1.0;
  bool want_logprobs = false;
  Constraint constraint = Constraint::kNone;

  // Throws edf::ConfigError unless temperature >= 0, 0 < top_p <= 1 and
  // max_new_tokens >= 1.
  void Validate() const;
};

struct CompletionResponse {
  std::string text;
  // Log-probabilities of candidate first tokens. For Yes/No-constrained
  // requests this holds exactly "Yes" and "No".
  std::optional<std::map<std::string, double>> first_token_candidates;
  // Attempts used, including the successful one.
  int attempts = 1;
};

struct RetryPolicy {
  int max_attempts = 3;
  std::chrono::milliseconds base_backoff{200};
};

struct BackendDescriptor {
  BackendKind kind = BackendKind::kMock;
  // OpenAI-compatible completions URL, e.g. http://host:8000/v1/completions
  std::string endpoint;
  // uniner / gner for NER models, asclepius / llama2 for filters.
  std::string template_id;
  // Optional "model" field sent with every request.
  std::string model;
  // Decoding defaults; the prompt field is ignored.
  CompletionRequest decoding;
  RetryPolicy retry;
  std::chrono::milliseconds timeout{60000};
  // Bound on concurrent in-flight requests per client.
  int max_in_flight = 4;
  // Query the model once per sentence instead of once per document.
  bool per_sentence = false;
  // The server enforces the Yes/No constraint itself (e.g. via a grammar)
  // instead of the client scoring both candidates.
  bool native_yes_no = false;

  // Greedy decoding for NER models.
  static BackendDescriptor NerDefaults(BackendKind kind);
  // temperature 0.2, top_p 0.95 for filter models.
  static BackendDescriptor FilterDefaults();
};

// A text completion service.
class CompletionClient {
 public:
  virtual ~CompletionClient() = default;
  virtual CompletionResponse Complete(const CompletionRequest& request) = 0;
};

struct YesNoScores {
  double lp_yes = 0.0;
  double lp_no = 0.0;
};

// "Yes" or "No" by higher log-probability; ties go to "No".
std::string_view ArgmaxYesNo(const YesNoScores& scores);

// Pulls the two candidates out of a constrained response. Throws
// edf::BackendError when either is missing.
YesNoScores YesNoFromResponse(const CompletionResponse& response);

// Open NER model. Single-type backends answer one sub-type per call;
// multi-type backends answer a whole sub-type set in one call.
class NerBackend {
 public:
  virtual ~NerBackend() = default;
  virtual bool multi_type() const = 0;

  // Raw surfaces for one sub-type, in response order. May be empty.
  virtual std::vector<std::string> ExtractSingle(const Document& doc,
                                                 std::string_view subtype) = 0;

  // Surfaces keyed by sub-type; labels outside subtypes are dropped with a
  // warning.
  virtual std::map<std::string, std::vector<std::string>> ExtractMulti(
      const Document& doc, const SubTypeSet& subtypes) = 0;
};

// NER over a completion client: renders the descriptor's model template
// (uniner or gner), then parses the entity list or BIO response.
class LlmNerBackend : public NerBackend {
 public:
  // The client must outlive this backend.
  LlmNerBackend(BackendDescriptor descriptor, CompletionClient& client);

  bool multi_type() const override;
  std::vector<std::string> ExtractSingle(const Document& doc,
                                         std::string_view subtype) override;
  std::map<std::string, std::vector<std::string>> ExtractMulti(
      const Document& doc, const SubTypeSet& subtypes) override;

  const BackendDescriptor& descriptor() const { return descriptor_; }

 private:
  // Document text, or one entry per sentence when per_sentence is set.
  std::vector<std::string> Inputs(const Document& doc) const;
  std::string Query(const std::string& prompt);

  BackendDescriptor descriptor_;
  CompletionClient& client_;
};

}  // namespace edf

#endif  // EDF_BACKEND_H_
