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

#ifndef EDF_CORPUS_H_
#define EDF_CORPUS_H_

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "edf/types.h"

namespace edf {

// Annotated documents. Gold entities are keyed by document id.
struct Corpus {
  std::vector<Document> documents;
  std::map<std::string, std::vector<GoldEntity>> gold;
  std::vector<EntityTypeSpec> catalog;

  const Document* FindDocument(std::string_view id) const;
  const EntityTypeSpec* FindType(std::string_view name) const;

  // Gold entities of one type in one document, in file order.
  std::vector<GoldEntity> GoldFor(std::string_view doc_id,
                                  std::string_view type) const;

  // Throws edf::Error when a gold entry references a missing document or an
  // uncataloged type, when document ids repeat, or when a gold span does
  // not reproduce its surface.
  void Validate() const;

  friend bool operator==(const Corpus&, const Corpus&) = default;
};

// Reads the canonical corpus format: one JSON object per line,
//   {"id": str, "text": str,
//    "entities": [{"text": str, "start": int, "end": int, "type": str,
//                  "polarity"?: "positive"|"negative"|"unspecified"}]}
// Offsets are character offsets. Errors carry the line number.
Corpus LoadJsonl(const std::string& path);
Corpus ParseJsonl(std::istream& in);

void WriteJsonl(const Corpus& corpus, std::ostream& out);
void WriteJsonl(const Corpus& corpus, const std::string& path);

// Reads CoNLL-style "token<TAB>label" lines (the first and last columns are
// used). Blank lines end a sentence. "-DOCSTART-" lines start a document,
// optionally followed by its id; without them each blank-line block is a
// document. Tokens are joined with single spaces and sentences with
// newlines. Repairs for stray I- tags are appended to warnings (and logged).
Corpus LoadBio(const std::string& path,
               std::vector<std::string>* warnings = nullptr);
Corpus ParseBio(std::istream& in, std::vector<std::string>* warnings = nullptr);

}  // namespace edf

#endif  // EDF_CORPUS_H_
