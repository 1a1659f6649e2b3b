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

#ifndef EDF_CONTEXT_H_
#define EDF_CONTEXT_H_

#include <string>
#include <string_view>
#include <vector>

#include "edf/types.h"

namespace edf {

struct Segmentation {
  std::vector<CharSpan> sentences;
  std::vector<CharSpan> paragraphs;
};

// Rule-based segmentation. Paragraphs are blocks separated by blank lines.
// Sentences end after '.', '?' or '!' followed by whitespace, and at every
// line break. Both are trimmed of surrounding whitespace, and sentences
// never cross paragraph boundaries.
Segmentation Segment(std::string_view text);
Segmentation Segment(std::u32string_view chars);

// Builds a segmented Document from raw text.
Document MakeDocument(std::string id, std::string text);

// All occurrences of surface in doc, leftmost first and non-overlapping.
// Matching compares normalized forms, so under the default configuration
// it ignores case and treats any whitespace run as one space. A match must
// not start or end inside a word.
std::vector<CharSpan> Ground(const Document& doc, std::string_view surface,
                             const NormalizationConfig& config = {});

enum class ContextMode { kNone, kSentence, kParagraph, kDocument };

std::string_view ToString(ContextMode mode);
ContextMode ParseContextMode(std::string_view name);

struct ContextWindow {
  ContextMode mode = ContextMode::kNone;
  std::string text;
  CharSpan span;
  // True when sentence/paragraph context was requested but the mention has
  // no grounded span, so the window fell back to empty.
  bool fallback = false;
};

// Context handed to the filter for a mention. Sentence and paragraph modes
// use the units overlapping the mention's first grounded span.
ContextWindow ContextFor(const Document& doc, const Mention& mention,
                         ContextMode mode);

}  // namespace edf

#endif  // EDF_CONTEXT_H_
