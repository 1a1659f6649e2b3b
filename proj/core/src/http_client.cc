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

#include "edf/http_client.h"

#include <cmath>
#include <regex>
#include <semaphore>
#include <thread>

#include "edf/error.h"
#include "edf/normalize.h"
#include "httplib.h"
#include "json.hpp"

namespace edf {

using nlohmann::json;

namespace {

constexpr int kTopLogprobs = 20;

struct ParsedBody {
  std::string text;
  // First-token alternatives, if the server sent any.
  std::optional<std::map<std::string, double>> top;
  // Per-token detail for echo scoring.
  std::vector<double> token_logprobs;
  std::vector<long long> text_offsets;
};

double AsLogprob(const json& v) {
  if (v.is_null()) return -std::numeric_limits<double>::infinity();
  return v.get<double>();
}

ParsedBody ParseBody(const std::string& body) {
  ParsedBody parsed;
  json j;
  try {
    j = json::parse(body);
  } catch (const json::parse_error& e) {
    throw BackendError(std::string("malformed response body: ") + e.what(), 0,
                       body);
  }
  try {
    const json* choice = &j;
    if (j.contains("choices")) {
      if (!j["choices"].is_array() || j["choices"].empty()) {
        throw BackendError("response has no choices", 0, body);
      }
      choice = &j["choices"][0];
    }
    parsed.text = choice->at("text").get<std::string>();
    if (!choice->contains("logprobs") || (*choice)["logprobs"].is_null()) {
      return parsed;
    }
    const json& lp = (*choice)["logprobs"];
    if (lp.is_object() && lp.contains("top_logprobs")) {
      const json& top = lp["top_logprobs"];
      if (top.is_array() && !top.empty() && top[0].is_object()) {
        std::map<std::string, double> first;
        for (const auto& [token, value] : top[0].items()) {
          first[token] = AsLogprob(value);
        }
        parsed.top = std::move(first);
      }
      if (lp.contains("token_logprobs")) {
        for (const json& v : lp["token_logprobs"]) {
          parsed.token_logprobs.push_back(AsLogprob(v));
        }
      }
      if (lp.contains("text_offset")) {
        parsed.text_offsets = lp["text_offset"].get<std::vector<long long>>();
      }
    } else if (lp.is_object()) {
      std::map<std::string, double> first;
      for (const auto& [token, value] : lp.items()) {
        first[token] = AsLogprob(value);
      }
      parsed.top = std::move(first);
    } else if (lp.is_array() && !lp.empty() && lp[0].is_object()) {
      // [{"token", "logprob", "top_logprobs": [{"token", "logprob"}]}]
      std::map<std::string, double> first;
      const json& head = lp[0];
      if (head.contains("top_logprobs")) {
        for (const json& alt : head["top_logprobs"]) {
          first[alt.at("token").get<std::string>()] = AsLogprob(alt.at("logprob"));
        }
      }
      if (head.contains("token") && head.contains("logprob")) {
        first.emplace(head["token"].get<std::string>(), AsLogprob(head["logprob"]));
      }
      parsed.top = std::move(first);
    }
  } catch (const json::exception& e) {
    throw BackendError(std::string("unexpected response shape: ") + e.what(), 0,
                       body);
  }
  return parsed;
}

// Best log-probability among top tokens that read as the candidate once
// surrounding whitespace is dropped.
std::optional<double> CandidateLogprob(const std::map<std::string, double>& top,
                                       std::string_view candidate) {
  std::optional<double> best;
  for (const auto& [token, lp] : top) {
    if (Trim(token) == candidate && (!best || lp > *best)) best = lp;
  }
  return best;
}

}  // namespace

struct HttpCompletionClient::Impl {
  explicit Impl(int max_in_flight) : in_flight(max_in_flight) {}

  std::string scheme_host_port;
  std::string path;
  std::counting_semaphore<1024> in_flight;
};

HttpCompletionClient::HttpCompletionClient(BackendDescriptor descriptor)
    : descriptor_(std::move(descriptor)) {
  if (descriptor_.endpoint.empty()) {
    throw ConfigError("backend endpoint is not set");
  }
  static const std::regex kUrl(R"(^(https?://[^/]+)(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(descriptor_.endpoint, m, kUrl)) {
    throw ConfigError("malformed endpoint URL '" + descriptor_.endpoint + "'");
  }
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
  if (descriptor_.endpoint.starts_with("https://")) {
    throw ConfigError("https endpoints need a build with OpenSSL support");
  }
#endif
  if (descriptor_.retry.max_attempts < 1) {
    throw ConfigError("retry max_attempts must be >= 1");
  }
  if (descriptor_.max_in_flight < 1 || descriptor_.max_in_flight > 1024) {
    throw ConfigError("max_in_flight must be in [1, 1024]");
  }
  impl_ = std::make_unique<Impl>(descriptor_.max_in_flight);
  impl_->scheme_host_port = m[1].str();
  impl_->path = m[2].matched && m[2].length() > 0 ? m[2].str() : "/v1/completions";
}

HttpCompletionClient::~HttpCompletionClient() = default;

namespace {

struct PostResult {
  std::string body;
  int attempts = 0;
};

}  // namespace

CompletionResponse HttpCompletionClient::Complete(
    const CompletionRequest& request) {
  request.Validate();
  int attempts = 0;

  // POST with retry. Returns the 2xx body.
  auto post = [&](const json& body) -> std::string {
    const std::string payload = body.dump();
    std::string last_error;
    int last_status = 0;
    for (int attempt = 1; attempt <= descriptor_.retry.max_attempts; ++attempt) {
      ++attempts;
      ++requests_sent_;
      httplib::Result result;
      {
        impl_->in_flight.acquire();
        httplib::Client client(impl_->scheme_host_port);
        const auto timeout = std::chrono::duration_cast<std::chrono::microseconds>(
            descriptor_.timeout);
        client.set_connection_timeout(timeout);
        client.set_read_timeout(timeout);
        client.set_write_timeout(timeout);
        result = client.Post(impl_->path, payload, "application/json");
        impl_->in_flight.release();
      }
      bool transient = false;
      if (!result) {
        last_error = "transport error: " + httplib::to_string(result.error());
        last_status = 0;
        transient = true;
      } else if (result->status >= 200 && result->status < 300) {
        return result->body;
      } else {
        last_status = result->status;
        last_error = "HTTP " + std::to_string(result->status) + ": " +
                     result->body.substr(0, 200);
        transient = result->status == 429 || result->status >= 500;
      }
      if (!transient) {
        throw BackendError(descriptor_.endpoint + ": " + last_error, last_status);
      }
      if (attempt < descriptor_.retry.max_attempts) {
        std::this_thread::sleep_for(descriptor_.retry.base_backoff *
                                    (1LL << (attempt - 1)));
      }
    }
    throw BackendError(descriptor_.endpoint + ": giving up after " +
                           std::to_string(descriptor_.retry.max_attempts) +
                           " attempts; last error " + last_error,
                       last_status);
  };

  json body = {{"prompt", request.prompt},
               {"max_tokens", request.max_new_tokens},
               {"temperature", request.temperature},
               {"top_p", request.top_p}};
  if (!descriptor_.model.empty()) body["model"] = descriptor_.model;
  const bool yes_no = request.constraint == Constraint::kYesNo;
  if (request.want_logprobs || yes_no) body["logprobs"] = kTopLogprobs;
  if (yes_no && descriptor_.native_yes_no) {
    body["grammar"] = "root ::= \"Yes\" | \"No\"";
  }

  ParsedBody parsed = ParseBody(post(body));
  CompletionResponse response;
  response.text = parsed.text;

  if (!yes_no) {
    if (request.want_logprobs) {
      if (!parsed.top) {
        throw BackendError("logprobs requested but absent", 0, parsed.text);
      }
      response.first_token_candidates = std::move(parsed.top);
    }
    response.attempts = attempts;
    return response;
  }

  if (descriptor_.native_yes_no) {
    const std::string answer = Trim(parsed.text);
    if (answer != "Yes" && answer != "No") {
      throw BackendError("constrained output is not Yes/No: '" + parsed.text + "'",
                         0, parsed.text);
    }
  }

  // Candidates absent from the top list are scored by echoing them.
  auto echo_score = [&](std::string_view candidate) -> double {
    json echo = {{"prompt", request.prompt + std::string(candidate)},
                 {"max_tokens", 0},
                 {"temperature", 0.0},
                 {"echo", true},
                 {"logprobs", 1}};
    if (!descriptor_.model.empty()) echo["model"] = descriptor_.model;
    ParsedBody scored = ParseBody(post(echo));
    if (scored.token_logprobs.empty() ||
        scored.token_logprobs.size() != scored.text_offsets.size()) {
      throw BackendError("logprobs requested but absent", 0, scored.text);
    }
    double total = 0.0;
    bool any = false;
    for (size_t i = 0; i < scored.token_logprobs.size(); ++i) {
      if (scored.text_offsets[i] >= static_cast<long long>(request.prompt.size())) {
        total += scored.token_logprobs[i];
        any = true;
      }
    }
    if (!any) throw BackendError("echo scoring returned no candidate tokens");
    return total;
  };

  std::map<std::string, double> top;
  if (parsed.top) top = std::move(*parsed.top);
  YesNoScores scores;
  auto yes = CandidateLogprob(top, "Yes");
  auto no = CandidateLogprob(top, "No");
  scores.lp_yes = yes ? *yes : echo_score("Yes");
  scores.lp_no = no ? *no : echo_score("No");
  response.text = std::string(ArgmaxYesNo(scores));
  response.first_token_candidates =
      std::map<std::string, double>{{"Yes", scores.lp_yes}, {"No", scores.lp_no}};
  response.attempts = attempts;
  return response;
}

}  // namespace edf
