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

#include "edf/corpus.h"

#include <fstream>
#include <set>
#include <sstream>

#include "edf/bio.h"
#include "edf/context.h"
#include "edf/error.h"
#include "edf/log.h"
#include "edf/unicode.h"
#include "json.hpp"

namespace edf {
namespace {

using nlohmann::json;

std::ifstream OpenForRead(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return in;
}

void AddToCatalog(const std::string& type, Corpus* corpus) {
  if (corpus->FindType(type) == nullptr) {
    corpus->catalog.push_back(EntityTypeSpec::Make(type));
  }
}

}  // namespace

const Document* Corpus::FindDocument(std::string_view id) const {
  for (const Document& doc : documents) {
    if (doc.id() == id) return &doc;
  }
  return nullptr;
}

const EntityTypeSpec* Corpus::FindType(std::string_view name) const {
  for (const EntityTypeSpec& spec : catalog) {
    if (spec.name == name) return &spec;
  }
  return nullptr;
}

std::vector<GoldEntity> Corpus::GoldFor(std::string_view doc_id,
                                        std::string_view type) const {
  std::vector<GoldEntity> out;
  auto it = gold.find(std::string(doc_id));
  if (it == gold.end()) return out;
  for (const GoldEntity& g : it->second) {
    if (g.type == type) out.push_back(g);
  }
  return out;
}

void Corpus::Validate() const {
  std::set<std::string> ids;
  for (const Document& doc : documents) {
    if (!ids.insert(doc.id()).second) {
      throw Error("duplicate document id '" + doc.id() + "'");
    }
  }
  for (const auto& [doc_id, entities] : gold) {
    const Document* doc = FindDocument(doc_id);
    if (doc == nullptr) {
      throw Error("gold entities reference unknown document '" + doc_id + "'");
    }
    for (const GoldEntity& g : entities) {
      if (FindType(g.type) == nullptr) {
        throw Error("document " + doc_id + ": entity type '" + g.type +
                    "' is not in the type catalog");
      }
      if (g.span.end > doc->length() || doc->Slice(g.span) != g.surface) {
        throw Error("document " + doc_id + ": entity '" + g.surface +
                    "' does not match the text at its offsets");
      }
    }
  }
}

Corpus ParseJsonl(std::istream& in) {
  Corpus corpus;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("malformed JSON: ") + e.what(), line_number);
    }
    try {
      std::string id = record.at("id").get<std::string>();
      std::string text = record.at("text").get<std::string>();
      if (corpus.FindDocument(id) != nullptr) {
        throw ParseError("duplicate document id '" + id + "'", line_number);
      }
      Document doc = MakeDocument(id, std::move(text));
      std::vector<GoldEntity> entities;
      if (record.contains("entities")) {
        for (const json& e : record.at("entities")) {
          GoldEntity g;
          g.surface = e.at("text").get<std::string>();
          const auto start = e.at("start").get<long long>();
          const auto end = e.at("end").get<long long>();
          g.type = e.at("type").get<std::string>();
          if (e.contains("polarity")) {
            try {
              g.polarity = ParsePolarity(e.at("polarity").get<std::string>());
            } catch (const Error& err) {
              throw ParseError("entity '" + g.surface + "': " + err.what(),
                               line_number);
            }
          }
          if (start < 0 || end < start ||
              static_cast<size_t>(end) > doc.length()) {
            throw ParseError("entity '" + g.surface + "' has offsets [" +
                                 std::to_string(start) + ", " +
                                 std::to_string(end) +
                                 ") outside the text of length " +
                                 std::to_string(doc.length()),
                             line_number);
          }
          g.span = {static_cast<size_t>(start), static_cast<size_t>(end)};
          const std::string actual = doc.Slice(g.span);
          if (actual != g.surface) {
            throw ParseError("entity '" + g.surface + "' at [" +
                                 std::to_string(start) + ", " +
                                 std::to_string(end) + ") spans '" + actual +
                                 "' in the text",
                             line_number);
          }
          AddToCatalog(g.type, &corpus);
          entities.push_back(std::move(g));
        }
      }
      corpus.gold[id] = std::move(entities);
      corpus.documents.push_back(std::move(doc));
    } catch (const json::exception& e) {
      throw ParseError(std::string("bad document record: ") + e.what(),
                       line_number);
    }
  }
  return corpus;
}

Corpus LoadJsonl(const std::string& path) {
  std::ifstream in = OpenForRead(path);
  try {
    return ParseJsonl(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void WriteJsonl(const Corpus& corpus, std::ostream& out) {
  for (const Document& doc : corpus.documents) {
    json entities = json::array();
    auto it = corpus.gold.find(doc.id());
    if (it != corpus.gold.end()) {
      for (const GoldEntity& g : it->second) {
        json e = {{"text", g.surface},
                  {"start", g.span.begin},
                  {"end", g.span.end},
                  {"type", g.type}};
        if (g.polarity != Polarity::kUnspecified) {
          e["polarity"] = ToString(g.polarity);
        }
        entities.push_back(std::move(e));
      }
    }
    json record = {
        {"id", doc.id()}, {"text", doc.text()}, {"entities", entities}};
    out << record.dump() << '\n';
  }
}

void WriteJsonl(const Corpus& corpus, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  WriteJsonl(corpus, out);
  if (!out) throw Error("failed writing " + path);
}

Corpus ParseBio(std::istream& in, std::vector<std::string>* warnings) {
  struct Token {
    std::string text;
    BioTag tag;
    int line;
  };
  struct PendingDoc {
    std::string id;
    std::vector<std::vector<Token>> sentences;
  };

  std::vector<PendingDoc> docs;
  std::vector<Token> sentence;
  bool explicit_docs = false;
  auto flush_sentence = [&] {
    if (sentence.empty()) return;
    if (docs.empty() || !explicit_docs) docs.emplace_back();
    docs.back().sentences.push_back(std::move(sentence));
    sentence.clear();
  };

  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream fields(line);
    std::vector<std::string> columns;
    for (std::string col; fields >> col;) columns.push_back(col);
    if (columns.empty()) {
      flush_sentence();
      continue;
    }
    if (columns.front() == "-DOCSTART-") {
      flush_sentence();
      explicit_docs = true;
      docs.emplace_back();
      if (columns.size() > 1 && columns[1] != "-X-") docs.back().id = columns[1];
      continue;
    }
    if (columns.size() < 2) {
      throw ParseError("expected 'token<TAB>label', got '" + line + "'",
                       line_number);
    }
    try {
      sentence.push_back({columns.front(), ParseBioTag(columns.back()),
                          line_number});
    } catch (const Error& e) {
      throw ParseError(e.what(), line_number);
    }
  }
  flush_sentence();

  Corpus corpus;
  int counter = 0;
  for (PendingDoc& pending : docs) {
    ++counter;
    if (pending.sentences.empty()) continue;
    if (pending.id.empty()) pending.id = "bio-" + std::to_string(counter);
    std::string text;
    size_t offset = 0;
    std::vector<GoldEntity> entities;
    for (size_t s = 0; s < pending.sentences.size(); ++s) {
      const std::vector<Token>& tokens = pending.sentences[s];
      if (s > 0) {
        text += '\n';
        ++offset;
      }
      std::vector<CharSpan> token_spans;
      std::vector<BioTag> tags;
      for (size_t t = 0; t < tokens.size(); ++t) {
        if (t > 0) {
          text += ' ';
          ++offset;
        }
        const size_t length = Utf8Length(tokens[t].text);
        token_spans.push_back({offset, offset + length});
        text += tokens[t].text;
        offset += length;
        tags.push_back(tokens[t].tag);
      }
      BioDecodeResult decoded = DecodeBio(tags);
      for (const BioWarning& w : decoded.warnings) {
        std::string message =
            "line " + std::to_string(tokens[w.token].line) + ": " + w.message;
        Warn(message);
        if (warnings != nullptr) warnings->push_back(std::move(message));
      }
      for (const BioEntity& e : decoded.entities) {
        GoldEntity g;
        g.span = {token_spans[e.begin].begin, token_spans[e.end - 1].end};
        g.type = e.type;
        entities.push_back(std::move(g));
      }
    }
    Document doc = MakeDocument(pending.id, std::move(text));
    for (GoldEntity& g : entities) {
      g.surface = doc.Slice(g.span);
      AddToCatalog(g.type, &corpus);
    }
    if (corpus.FindDocument(doc.id()) != nullptr) {
      throw ParseError("duplicate document id '" + doc.id() + "'");
    }
    corpus.gold[doc.id()] = std::move(entities);
    corpus.documents.push_back(std::move(doc));
  }
  return corpus;
}

Corpus LoadBio(const std::string& path, std::vector<std::string>* warnings) {
  std::ifstream in = OpenForRead(path);
  try {
    return ParseBio(in, warnings);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace edf
