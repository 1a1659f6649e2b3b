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

#include "edf/types.h"

#include <string>
#include <unordered_set>

#include "edf/error.h"
#include "edf/normalize.h"
#include "edf/unicode.h"

namespace edf {
namespace {

std::string SpanString(const CharSpan& span) {
  return "[" + std::to_string(span.begin) + ", " + std::to_string(span.end) +
         ")";
}

void CheckRanges(const std::vector<CharSpan>& ranges, size_t length,
                 std::string_view what, const std::string& doc_id) {
  size_t previous_end = 0;
  for (const CharSpan& span : ranges) {
    if (span.begin > span.end || span.end > length) {
      throw Error("document " + doc_id + ": " + std::string(what) + " range " +
                  SpanString(span) + " outside text of length " +
                  std::to_string(length));
    }
    if (span.begin < previous_end) {
      throw Error("document " + doc_id + ": " + std::string(what) +
                  " ranges overlap or are out of order at " +
                  SpanString(span));
    }
    previous_end = span.end;
  }
}

}  // namespace

Document::Document(std::string id, std::string text,
                   std::vector<CharSpan> sentences,
                   std::vector<CharSpan> paragraphs)
    : id_(std::move(id)),
      text_(std::move(text)),
      chars_(DecodeUtf8(text_)),
      sentences_(std::move(sentences)),
      paragraphs_(std::move(paragraphs)) {
  CheckRanges(sentences_, chars_.size(), "sentence", id_);
  CheckRanges(paragraphs_, chars_.size(), "paragraph", id_);
  // Ranges are sorted and disjoint, so "exactly one" reduces to "at least
  // one" for every non-whitespace character.
  size_t p = 0;
  for (size_t i = 0; i < chars_.size(); ++i) {
    if (IsSpace(chars_[i])) continue;
    while (p < paragraphs_.size() && paragraphs_[p].end <= i) ++p;
    if (p == paragraphs_.size() || paragraphs_[p].begin > i) {
      throw Error("document " + id_ + ": character " + std::to_string(i) +
                  " is not covered by any paragraph");
    }
  }
}

std::string Document::Slice(const CharSpan& span) const {
  if (span.begin > span.end || span.end > chars_.size()) {
    throw Error("document " + id_ + ": span " + SpanString(span) +
                " outside text of length " + std::to_string(chars_.size()));
  }
  return EncodeUtf8(
      std::u32string_view(chars_).substr(span.begin, span.size()));
}

EntityTypeSpec EntityTypeSpec::Make(std::string_view name,
                                    std::optional<std::string> description,
                                    bool requires_context) {
  EntityTypeSpec spec;
  spec.name = Trim(name);
  if (spec.name.empty()) throw Error("entity type name is empty");
  spec.description = std::move(description);
  spec.requires_context = requires_context;
  return spec;
}

std::string_view ToString(DecomposerSource source) {
  switch (source) {
    case DecomposerSource::kAnnotation:
      return "annotation";
    case DecomposerSource::kLlmGenerated:
      return "llm-generated";
    case DecomposerSource::kUmls:
      return "umls";
    case DecomposerSource::kCustom:
      return "custom";
  }
  return "unknown";
}

DecomposerSource ParseDecomposerSource(std::string_view name) {
  for (auto source :
       {DecomposerSource::kAnnotation, DecomposerSource::kLlmGenerated,
        DecomposerSource::kUmls, DecomposerSource::kCustom}) {
    if (name == ToString(source)) return source;
  }
  if (name == "llm" || name == "chatgpt") return DecomposerSource::kLlmGenerated;
  throw Error("unknown decomposer source '" + std::string(name) +
              "' (expected annotation, llm-generated, umls or custom)");
}

SubTypeSet::SubTypeSet(std::string target, DecomposerSource source,
                       std::vector<std::string> subtypes)
    : target_(std::move(target)),
      source_(source),
      subtypes_(std::move(subtypes)) {
  if (subtypes_.empty()) {
    throw Error("sub-type set for '" + target_ + "' is empty");
  }
  std::unordered_set<std::string> seen;
  for (const std::string& subtype : subtypes_) {
    if (Trim(subtype).empty()) {
      throw Error("sub-type set for '" + target_ + "' has an empty entry");
    }
    if (!seen.insert(FoldCase(subtype)).second) {
      throw Error("sub-type set for '" + target_ +
                  "' has duplicate entry '" + subtype + "'");
    }
  }
}

bool SubTypeSet::Contains(std::string_view subtype) const {
  const std::string folded = FoldCase(subtype);
  for (const std::string& s : subtypes_) {
    if (FoldCase(s) == folded) return true;
  }
  return false;
}

std::string_view ToString(Answer answer) {
  return answer == Answer::kYes ? "yes" : "no";
}

Answer ParseAnswer(std::string_view text) {
  const std::string folded = FoldCase(Trim(text));
  if (folded == "yes") return Answer::kYes;
  if (folded == "no") return Answer::kNo;
  throw Error("expected yes or no, got '" + std::string(text) + "'");
}

std::string_view ToString(Polarity polarity) {
  switch (polarity) {
    case Polarity::kPositive:
      return "positive";
    case Polarity::kNegative:
      return "negative";
    case Polarity::kUnspecified:
      return "unspecified";
  }
  return "unspecified";
}

Polarity ParsePolarity(std::string_view name) {
  if (name == "positive") return Polarity::kPositive;
  if (name == "negative") return Polarity::kNegative;
  if (name == "unspecified") return Polarity::kUnspecified;
  throw Error("unknown polarity '" + std::string(name) + "'");
}

}  // namespace edf
