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

#ifndef EDF_ERROR_H_
#define EDF_ERROR_H_

#include <stdexcept>
#include <string>

namespace edf {

// Base class for all failures raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration or arguments. The CLI maps this to exit code 1.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed input file. Carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Failure talking to a model service, or an unusable response from it.
class BackendError : public Error {
 public:
  BackendError(const std::string& what, int status = 0, std::string raw = {})
      : Error(what), status_(status), raw_(std::move(raw)) {}
  // HTTP status, 0 for transport failures and local parse errors.
  int status() const { return status_; }
  // Raw model output when the failure is a parse failure.
  const std::string& raw() const { return raw_; }

 private:
  int status_;
  std::string raw_;
};

}  // namespace edf

#endif  // EDF_ERROR_H_
