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

#include "edf/parsers.h"

#include <algorithm>
#include <cctype>

#include "edf/error.h"
#include "edf/normalize.h"
#include "json.hpp"

namespace edf {
namespace {

bool IsAsciiSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
         c == '\f';
}

std::string_view TrimAscii(std::string_view s) {
  while (!s.empty() && IsAsciiSpace(s.front())) s.remove_prefix(1);
  while (!s.empty() && IsAsciiSpace(s.back())) s.remove_suffix(1);
  return s;
}

std::string_view StripBullet(std::string_view s) {
  s = TrimAscii(s);
  if (!s.empty() && (s.front() == '-' || s.front() == '*' || s.front() == '+')) {
    return TrimAscii(s.substr(1));
  }
  if (s.starts_with("\xE2\x80\xA2")) return TrimAscii(s.substr(3));  // U+2022
  size_t digits = 0;
  while (digits < s.size() && std::isdigit(static_cast<unsigned char>(s[digits]))) {
    ++digits;
  }
  if (digits > 0 && digits < s.size() && (s[digits] == '.' || s[digits] == ')') &&
      (digits + 1 == s.size() || IsAsciiSpace(s[digits + 1]))) {
    return TrimAscii(s.substr(digits + 1));
  }
  return s;
}

std::string_view StripQuotes(std::string_view s) {
  while (s.size() >= 2 &&
         ((s.front() == '"' && s.back() == '"') ||
          (s.front() == '\'' && s.back() == '\''))) {
    s = TrimAscii(s.substr(1, s.size() - 2));
  }
  return s;
}

// Quoted strings inside a bracketed list, tolerating single quotes and
// backslash escapes. Returns false if anything but quoted items, commas and
// whitespace appears.
bool ScanQuotedItems(std::string_view body, std::vector<std::string>* items) {
  size_t i = 0;
  while (i < body.size()) {
    const char c = body[i];
    if (IsAsciiSpace(c) || c == ',') {
      ++i;
      continue;
    }
    if (c != '"' && c != '\'') return false;
    std::string item;
    size_t j = i + 1;
    bool closed = false;
    for (; j < body.size(); ++j) {
      if (body[j] == '\\' && j + 1 < body.size()) {
        item.push_back(body[++j]);
      } else if (body[j] == c) {
        closed = true;
        break;
      } else {
        item.push_back(body[j]);
      }
    }
    if (!closed) return false;
    items->push_back(std::move(item));
    i = j + 1;
  }
  return true;
}

void KeepNonEmpty(std::vector<std::string>* items) {
  std::vector<std::string> kept;
  for (std::string& item : *items) {
    std::string trimmed = Trim(item);
    if (!trimmed.empty()) kept.push_back(std::move(trimmed));
  }
  *items = std::move(kept);
}

bool ValidLabel(std::string_view label) {
  if (label == "O") return true;
  return label.size() > 2 && (label[0] == 'B' || label[0] == 'I') &&
         label[1] == '-' && label.find_first_of("()") == std::string_view::npos;
}

}  // namespace

std::vector<std::string> SplitListItems(std::string_view raw) {
  std::vector<std::string> items;
  size_t line_begin = 0;
  while (line_begin <= raw.size()) {
    size_t line_end = raw.find('\n', line_begin);
    if (line_end == std::string_view::npos) line_end = raw.size();
    std::string_view line = TrimAscii(raw.substr(line_begin, line_end - line_begin));
    line_begin = line_end + 1;
    if (line.empty() || line.back() == ':') continue;
    line = StripBullet(line);
    size_t item_begin = 0;
    while (item_begin <= line.size()) {
      size_t item_end = line.find(',', item_begin);
      if (item_end == std::string_view::npos) item_end = line.size();
      std::string_view item =
          StripBullet(line.substr(item_begin, item_end - item_begin));
      while (!item.empty() && item.back() == '.') item.remove_suffix(1);
      item = StripQuotes(TrimAscii(item));
      if (!item.empty()) items.emplace_back(item);
      item_begin = item_end + 1;
    }
  }
  return items;
}

std::vector<std::string> ParseEntityList(std::string_view raw) {
  const std::string_view text = TrimAscii(raw);
  const size_t open = text.find('[');
  const size_t close = text.rfind(']');
  if (open != std::string_view::npos && close != std::string_view::npos &&
      open < close) {
    const std::string_view bracketed = text.substr(open, close - open + 1);
    std::vector<std::string> items;
    try {
      const nlohmann::json j = nlohmann::json::parse(bracketed);
      if (j.is_array()) {
        bool all_strings = true;
        for (const auto& v : j) {
          if (!v.is_string()) {
            all_strings = false;
            break;
          }
          items.push_back(v.get<std::string>());
        }
        if (all_strings) {
          KeepNonEmpty(&items);
          return items;
        }
        items.clear();
      }
    } catch (const nlohmann::json::exception&) {
      items.clear();
    }
    const std::string_view body = bracketed.substr(1, bracketed.size() - 2);
    if (ScanQuotedItems(body, &items)) {
      KeepNonEmpty(&items);
      return items;
    }
    items = SplitListItems(body);
    if (!items.empty()) return items;
  }
  std::vector<std::string> items = SplitListItems(text);
  if (items.empty()) {
    throw BackendError("no list-like content in model output", 0,
                       std::string(raw));
  }
  return items;
}

BioResponse ParseBioResponse(std::string_view raw) {
  std::vector<std::string> words;
  std::vector<BioTag> tags;
  size_t pos = 0;
  auto skip_space = [&] {
    while (pos < raw.size() && IsAsciiSpace(raw[pos])) ++pos;
  };
  skip_space();
  while (pos < raw.size()) {
    // The word ends at the first "(label)" that is followed by a separator.
    size_t label_open = std::string_view::npos;
    size_t after = 0;
    for (size_t k = raw.find('(', pos + 1); k != std::string_view::npos;
         k = raw.find('(', k + 1)) {
      const size_t k_close = raw.find(')', k + 1);
      if (k_close == std::string_view::npos) break;
      if (!ValidLabel(raw.substr(k + 1, k_close - k - 1))) continue;
      size_t next = k_close + 1;
      if (next < raw.size() && raw[next] == ',') ++next;
      if (next == raw.size() || IsAsciiSpace(raw[next])) {
        label_open = k;
        after = next;
        break;
      }
    }
    const size_t word_end =
        label_open == std::string_view::npos ? raw.size() : label_open;
    const std::string_view word = raw.substr(pos, word_end - pos);
    const bool has_space = std::any_of(word.begin(), word.end(), IsAsciiSpace);
    if (label_open == std::string_view::npos || has_space) {
      size_t shown = 0;
      while (shown < word.size() && !IsAsciiSpace(word[shown])) ++shown;
      throw BackendError("word '" + std::string(word.substr(0, shown)) +
                             "' is missing its (label)",
                         0, std::string(raw));
    }
    const size_t label_close = raw.find(')', label_open + 1);
    words.emplace_back(word);
    tags.push_back(
        ParseBioTag(raw.substr(label_open + 1, label_close - label_open - 1)));
    pos = after;
    skip_space();
  }

  BioResponse response;
  BioDecodeResult decoded = DecodeBio(tags);
  for (const BioWarning& w : decoded.warnings) {
    response.warnings.push_back("word " + std::to_string(w.token + 1) + " '" +
                                words[w.token] + "': " + w.message);
  }
  for (const BioEntity& e : decoded.entities) {
    TaggedEntity entity;
    for (size_t i = e.begin; i < e.end; ++i) {
      if (i > e.begin) entity.surface += ' ';
      entity.surface += words[i];
    }
    entity.type = e.type;
    response.entities.push_back(std::move(entity));
  }
  return response;
}

std::string RenderBioResponse(const std::vector<std::string>& words,
                              const std::vector<BioTag>& tags) {
  if (words.size() != tags.size()) {
    throw Error("word and tag counts differ");
  }
  std::string out;
  for (size_t i = 0; i < words.size(); ++i) {
    if (i > 0) out += ", ";
    out += words[i];
    out += '(';
    out += FormatBioTag(tags[i]);
    out += ')';
  }
  return out;
}

}  // namespace edf
