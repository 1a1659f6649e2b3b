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

#include "edf/context.h"

#include "edf/error.h"
#include "edf/log.h"
#include "edf/normalize.h"
#include "edf/unicode.h"

namespace edf {
namespace {

bool IsTerminator(char32_t c) { return c == U'.' || c == U'?' || c == U'!'; }

// Shrinks [begin, end) to exclude leading and trailing whitespace.
CharSpan TrimSpan(std::u32string_view chars, size_t begin, size_t end) {
  while (begin < end && IsSpace(chars[begin])) ++begin;
  while (end > begin && IsSpace(chars[end - 1])) --end;
  return {begin, end};
}

void AppendSentences(std::u32string_view chars, const CharSpan& paragraph,
                     std::vector<CharSpan>* out) {
  size_t start = paragraph.begin;
  auto emit = [&](size_t end) {
    CharSpan s = TrimSpan(chars, start, end);
    if (!s.empty()) out->push_back(s);
    start = end;
  };
  for (size_t i = paragraph.begin; i < paragraph.end; ++i) {
    const char32_t c = chars[i];
    if (c == U'\n') {
      emit(i);
    } else if (IsTerminator(c) && i + 1 < paragraph.end &&
               IsSpace(chars[i + 1])) {
      emit(i + 1);
    }
  }
  emit(paragraph.end);
}

// Smallest span covering every unit in units that overlaps target.
CharSpan CoveringUnits(const std::vector<CharSpan>& units,
                       const CharSpan& target) {
  CharSpan cover{target.begin, target.end};
  bool found = false;
  for (const CharSpan& unit : units) {
    if (unit.end <= target.begin) continue;
    if (unit.begin >= target.end) break;
    if (!found) cover.begin = std::min(unit.begin, target.begin);
    cover.end = std::max(unit.end, target.end);
    found = true;
  }
  return cover;
}

}  // namespace

Segmentation Segment(std::u32string_view chars) {
  Segmentation seg;
  // Walk line by line; whitespace-only lines separate paragraphs.
  size_t block_begin = 0;
  bool in_block = false;
  size_t line_begin = 0;
  while (line_begin <= chars.size()) {
    size_t line_end = chars.find(U'\n', line_begin);
    if (line_end == std::u32string_view::npos) line_end = chars.size();
    bool blank = true;
    for (size_t i = line_begin; i < line_end; ++i) {
      if (!IsSpace(chars[i])) {
        blank = false;
        break;
      }
    }
    if (blank) {
      if (in_block) {
        seg.paragraphs.push_back(TrimSpan(chars, block_begin, line_begin));
        in_block = false;
      }
    } else if (!in_block) {
      block_begin = line_begin;
      in_block = true;
    }
    line_begin = line_end + 1;
  }
  if (in_block) {
    seg.paragraphs.push_back(TrimSpan(chars, block_begin, chars.size()));
  }
  for (const CharSpan& p : seg.paragraphs) {
    AppendSentences(chars, p, &seg.sentences);
  }
  return seg;
}

Segmentation Segment(std::string_view text) {
  return Segment(DecodeUtf8(text));
}

Document MakeDocument(std::string id, std::string text) {
  Segmentation seg = Segment(std::string_view(text));
  return Document(std::move(id), std::move(text), std::move(seg.sentences),
                  std::move(seg.paragraphs));
}

std::vector<CharSpan> Ground(const Document& doc, std::string_view surface,
                             const NormalizationConfig& config) {
  std::vector<CharSpan> spans;
  const std::u32string pattern = Normalize(DecodeUtf8(surface), config);
  if (pattern.empty()) return spans;

  // Normalized view of the document. origin[k] is the first original
  // character behind normalized character k, and origin_end[k] one past the
  // last (a collapsed whitespace run maps to the whole run).
  const std::u32string& chars = doc.chars();
  std::u32string view;
  std::vector<size_t> origin;
  std::vector<size_t> origin_end;
  view.reserve(chars.size());
  origin.reserve(chars.size());
  origin_end.reserve(chars.size());
  bool in_space_run = false;
  for (size_t i = 0; i < chars.size(); ++i) {
    const char32_t c = chars[i];
    const bool collapsible = config.collapse_whitespace && IsSpace(c);
    if (collapsible && in_space_run) {
      origin_end.back() = i + 1;
      continue;
    }
    in_space_run = collapsible;
    if (collapsible) {
      view.push_back(U' ');
    } else {
      view.push_back(config.lowercase ? ToLower(c) : c);
    }
    origin.push_back(i);
    origin_end.push_back(i + 1);
  }

  const bool word_start = IsWordChar(pattern.front());
  const bool word_end = IsWordChar(pattern.back());
  size_t from = 0;
  while (from + pattern.size() <= view.size()) {
    const size_t k = view.find(pattern, from);
    if (k == std::u32string::npos) break;
    const size_t begin = origin[k];
    const size_t end = origin_end[k + pattern.size() - 1];
    const bool starts_ok =
        !word_start || begin == 0 || !IsWordChar(chars[begin - 1]);
    const bool ends_ok =
        !word_end || end == chars.size() || !IsWordChar(chars[end]);
    if (starts_ok && ends_ok) {
      spans.push_back({begin, end});
      from = k + pattern.size();
    } else {
      from = k + 1;
    }
  }
  return spans;
}

std::string_view ToString(ContextMode mode) {
  switch (mode) {
    case ContextMode::kNone:
      return "none";
    case ContextMode::kSentence:
      return "sentence";
    case ContextMode::kParagraph:
      return "paragraph";
    case ContextMode::kDocument:
      return "document";
  }
  return "none";
}

ContextMode ParseContextMode(std::string_view name) {
  for (auto mode : {ContextMode::kNone, ContextMode::kSentence,
                    ContextMode::kParagraph, ContextMode::kDocument}) {
    if (name == ToString(mode)) return mode;
  }
  throw ConfigError("unknown context mode '" + std::string(name) +
                    "' (expected none, sentence, paragraph or document)");
}

ContextWindow ContextFor(const Document& doc, const Mention& mention,
                         ContextMode mode) {
  ContextWindow window;
  window.mode = mode;
  switch (mode) {
    case ContextMode::kNone:
      return window;
    case ContextMode::kDocument:
      window.span = {0, doc.length()};
      window.text = doc.text();
      return window;
    case ContextMode::kSentence:
    case ContextMode::kParagraph:
      break;
  }
  if (mention.spans.empty()) {
    window.fallback = true;
    Warn("document " + doc.id() + ": '" + mention.surface +
         "' does not occur in the text; filtering it without context");
    return window;
  }
  const CharSpan& first = mention.spans.front();
  window.span = CoveringUnits(
      mode == ContextMode::kSentence ? doc.sentences() : doc.paragraphs(),
      first);
  window.text = doc.Slice(window.span);
  return window;
}

}  // namespace edf
