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

#include "edf/normalize.h"

#include "edf/unicode.h"

namespace edf {

std::u32string Normalize(std::u32string_view text,
                         const NormalizationConfig& config) {
  std::u32string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char32_t c : text) {
    if (config.collapse_whitespace && IsSpace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(U' ');
      pending_space = false;
    }
    out.push_back(config.lowercase ? ToLower(c) : c);
  }
  // Edges are always trimmed; punctuation goes with them when requested.
  auto strippable = [&](char32_t c) {
    return IsSpace(c) || (config.strip_edge_punctuation && IsPunct(c));
  };
  size_t begin = 0;
  size_t end = out.size();
  while (begin < end && strippable(out[begin])) ++begin;
  while (end > begin && strippable(out[end - 1])) --end;
  out = out.substr(begin, end - begin);
  return out;
}

std::string Normalize(std::string_view text,
                      const NormalizationConfig& config) {
  return EncodeUtf8(Normalize(DecodeUtf8(text), config));
}

std::string FoldCase(std::string_view text) {
  std::u32string chars = DecodeUtf8(text);
  for (char32_t& c : chars) c = ToLower(c);
  return EncodeUtf8(chars);
}

std::string Trim(std::string_view text) {
  std::u32string chars = DecodeUtf8(text);
  size_t begin = 0;
  size_t end = chars.size();
  while (begin < end && IsSpace(chars[begin])) ++begin;
  while (end > begin && IsSpace(chars[end - 1])) --end;
  return EncodeUtf8(std::u32string_view(chars).substr(begin, end - begin));
}

std::vector<std::string> WordTokens(std::string_view text,
                                    const NormalizationConfig& config) {
  std::vector<std::string> tokens;
  std::string current;
  for (char32_t c : Normalize(DecodeUtf8(text), config)) {
    if (IsWordChar(c)) {
      AppendUtf8(c, &current);
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

}  // namespace edf
