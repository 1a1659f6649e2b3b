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

#ifndef EDF_TYPES_H_
#define EDF_TYPES_H_

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace edf {

// Half-open range [begin, end) of character offsets. Offsets count Unicode
// scalar values, not bytes.
struct CharSpan {
  size_t begin = 0;
  size_t end = 0;

  size_t size() const { return end - begin; }
  bool empty() const { return begin == end; }
  bool Contains(const CharSpan& other) const {
    return begin <= other.begin && other.end <= end;
  }
  friend bool operator==(const CharSpan&, const CharSpan&) = default;
  friend auto operator<=>(const CharSpan&, const CharSpan&) = default;
};

// One clinical narrative with its sentence and paragraph segmentation.
// Immutable after construction. Use MakeDocument() (context.h) to segment
// raw text.
class Document {
 public:
  Document() = default;

  // Validates every range and the paragraph coverage invariant; throws
  // edf::Error on violation.
  Document(std::string id, std::string text, std::vector<CharSpan> sentences,
           std::vector<CharSpan> paragraphs);

  const std::string& id() const { return id_; }
  const std::string& text() const { return text_; }
  const std::u32string& chars() const { return chars_; }
  size_t length() const { return chars_.size(); }
  const std::vector<CharSpan>& sentences() const { return sentences_; }
  const std::vector<CharSpan>& paragraphs() const { return paragraphs_; }

  // UTF-8 text of a character range. Throws on out-of-range spans.
  std::string Slice(const CharSpan& span) const;

  friend bool operator==(const Document& a, const Document& b) {
    return a.id_ == b.id_ && a.text_ == b.text_ &&
           a.sentences_ == b.sentences_ && a.paragraphs_ == b.paragraphs_;
  }

 private:
  std::string id_;
  std::string text_;
  std::u32string chars_;
  std::vector<CharSpan> sentences_;
  std::vector<CharSpan> paragraphs_;
};

struct EntityTypeSpec {
  std::string name;
  // Definition used by the described filter prompt, e.g. "a procedure or
  // substance given to a patient to resolve a medical problem".
  std::optional<std::string> description;
  bool requires_context = false;

  // Trims the name and rejects empty names.
  static EntityTypeSpec Make(std::string_view name,
                             std::optional<std::string> description = {},
                             bool requires_context = false);

  friend bool operator==(const EntityTypeSpec&, const EntityTypeSpec&) = default;
};

enum class DecomposerSource { kAnnotation, kLlmGenerated, kUmls, kCustom };

std::string_view ToString(DecomposerSource source);
DecomposerSource ParseDecomposerSource(std::string_view name);

// Sub-types produced by an entity decomposer for one target type.
class SubTypeSet {
 public:
  // Throws edf::Error if subtypes is empty, contains an empty string, or
  // contains case-insensitive duplicates. Order is preserved.
  SubTypeSet(std::string target, DecomposerSource source,
             std::vector<std::string> subtypes);

  const std::string& target() const { return target_; }
  DecomposerSource source() const { return source_; }
  const std::vector<std::string>& subtypes() const { return subtypes_; }
  size_t size() const { return subtypes_.size(); }

  // Case-insensitive membership.
  bool Contains(std::string_view subtype) const;

  friend bool operator==(const SubTypeSet&, const SubTypeSet&) = default;

 private:
  std::string target_;
  DecomposerSource source_;
  std::vector<std::string> subtypes_;
};

enum class Answer { kYes, kNo };

std::string_view ToString(Answer answer);
Answer ParseAnswer(std::string_view text);

struct FilterVerdict {
  Answer answer = Answer::kYes;
  // Probability of "No" renormalized over the two candidates.
  double p_no = 0.0;
  bool accepted = true;

  friend bool operator==(const FilterVerdict&, const FilterVerdict&) = default;
};

struct NormalizationConfig {
  bool lowercase = true;
  bool collapse_whitespace = true;
  bool strip_edge_punctuation = false;

  friend bool operator==(const NormalizationConfig&,
                         const NormalizationConfig&) = default;
};

// A predicted entity surface, deduplicated per document by its normalized
// form.
struct Mention {
  std::string surface;
  std::string normalized;
  std::set<std::string> origins;
  std::vector<CharSpan> spans;
  std::optional<FilterVerdict> verdict;

  friend bool operator==(const Mention&, const Mention&) = default;
};

enum class Polarity { kPositive, kNegative, kUnspecified };

std::string_view ToString(Polarity polarity);
// Throws edf::Error on anything but "positive", "negative", "unspecified".
Polarity ParsePolarity(std::string_view name);

struct GoldEntity {
  std::string surface;
  CharSpan span;
  std::string type;
  Polarity polarity = Polarity::kUnspecified;

  friend bool operator==(const GoldEntity&, const GoldEntity&) = default;
};

}  // namespace edf

#endif  // EDF_TYPES_H_
