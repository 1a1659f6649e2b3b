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

#ifndef EDF_PARSERS_H_
#define EDF_PARSERS_H_

#include <string>
#include <string_view>
#include <vector>

#include "edf/bio.h"

namespace edf {

// Parses a single-type NER response. Accepts a bracketed array of quoted
// strings ('["aspirin", "insulin"]', single or double quotes) and falls
// back to a plain list split on newlines and commas. Empty items are
// dropped; order and duplicates are kept. Throws edf::BackendError
// carrying the raw text when nothing list-like is found.
std::vector<std::string> ParseEntityList(std::string_view raw);

// Splits a loosely formatted list on newlines and commas, stripping bullet
// markers ("-", "*", "1.", "2)"), wrapping quotes and trailing periods.
// Lines ending in ':' are treated as headings and skipped.
std::vector<std::string> SplitListItems(std::string_view raw);

struct TaggedEntity {
  std::string surface;
  std::string type;

  friend bool operator==(const TaggedEntity&, const TaggedEntity&) = default;
};

struct BioResponse {
  std::vector<TaggedEntity> entities;
  std::vector<std::string> warnings;
};

// Parses "word_1(label_1), word_2(label_2), ..." output. Entities are
// maximal B-X (I-X)* runs, their words joined by single spaces; stray I-
// tags open a new entity with a warning. Words may contain parentheses and
// commas but not whitespace. Throws edf::BackendError when a word lacks its
// parenthesized label.
BioResponse ParseBioResponse(std::string_view raw);

// Inverse of ParseBioResponse for whitespace-free words.
std::string RenderBioResponse(const std::vector<std::string>& words,
                              const std::vector<BioTag>& tags);

}  // namespace edf

#endif  // EDF_PARSERS_H_
