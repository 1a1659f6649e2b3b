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

#ifndef EDF_HTTP_CLIENT_H_
#define EDF_HTTP_CLIENT_H_

#include <atomic>
#include <cstdint>
#include <memory>
#include <string>

#include "edf/backend.h"

namespace edf {

// Client for an OpenAI-compatible completions endpoint.
//
// Request body: {"prompt", "max_tokens", "temperature", "top_p",
// "logprobs"?, "model"?}. The response may be the OpenAI shape
// ({"choices": [{"text", "logprobs": {...}}]}) or the flat shape
// {"text", "logprobs"}.
//
// Transport failures, 429 and 5xx are retried with exponential backoff
// (base_backoff * 2^(attempt-1)) up to retry.max_attempts; other non-2xx
// statuses fail immediately. At most max_in_flight requests are on the wire
// at once.
//
// Yes/No-constrained requests are answered with both candidates' first-token
// log-probabilities. Candidates missing from the top log-probabilities are
// scored by echoing prompt + candidate and summing the candidate tokens'
// log-probabilities. If native_yes_no is set, a grammar restricting the
// output to Yes/No is sent and any other output is an error.
class HttpCompletionClient : public CompletionClient {
 public:
  explicit HttpCompletionClient(BackendDescriptor descriptor);
  ~HttpCompletionClient() override;

  CompletionResponse Complete(const CompletionRequest& request) override;

  // HTTP requests issued, retries included.
  int64_t requests_sent() const { return requests_sent_.load(); }

  const BackendDescriptor& descriptor() const { return descriptor_; }

 private:
  struct Impl;

  BackendDescriptor descriptor_;
  std::unique_ptr<Impl> impl_;
  std::atomic<int64_t> requests_sent_{0};
};

}  // namespace edf

#endif  // EDF_HTTP_CLIENT_H_
