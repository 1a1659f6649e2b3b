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

#include "edf/synthetic.h"

#include <algorithm>
#include <cstdio>
#include <map>
#include <random>
#include <set>

#include "edf/context.h"
#include "edf/error.h"
#include "edf/normalize.h"
#include "edf/unicode.h"

namespace edf {
namespace {

// Every template holds exactly one "{X}".
const std::map<std::string, std::vector<std::string>>& PositiveTemplates() {
  static const std::map<std::string, std::vector<std::string>> templates = {
      {"treatment",
       {"Patient was started on {X} during this admission.",
        "Plan to continue {X} after discharge.",
        "She received {X} in the emergency department.",
        "He tolerated {X} well."}},
      {"problem",
       {"Patient presented with {X}.",
        "History is significant for {X}.",
        "Course was complicated by {X}."}},
      {"test",
       {"Patient underwent {X} on hospital day two.",
        "Results of {X} were reviewed with the team.",
        "A repeat {X} was ordered."}},
  };
  return templates;
}

const std::vector<std::string>& GenericTemplates() {
  static const std::vector<std::string> templates = {
      "The team discussed {X} with the patient.",
      "Records note {X} during this admission.",
      "Follow-up regarding {X} was arranged."};
  return templates;
}

// Each cue is followed directly by the entity.
const std::vector<std::string>& NegationTemplates() {
  static const std::vector<std::string> templates = {
      "Patient denies {X}.", "There is no evidence of {X}.",
      "Negative for {X}.", "Discharged without {X}."};
  return templates;
}

const std::vector<std::string>& DistractorTemplates() {
  static const std::vector<std::string> templates = {
      "Records also mention {X} from a prior visit.",
      "Outside documentation lists {X}."};
  return templates;
}

const std::vector<std::string>& Fillers() {
  static const std::vector<std::string> fillers = {
      "The patient tolerated a regular diet.",
      "Family was updated at the bedside.",
      "Patient ambulated independently.",
      "Social work was consulted for discharge planning.",
      "No acute events overnight."};
  return fillers;
}

const std::vector<std::string>& Headers() {
  static const std::vector<std::string> headers = {
      "HISTORY OF PRESENT ILLNESS:", "HOSPITAL COURSE:", "PROCEDURES:",
      "DISCHARGE PLAN:"};
  return headers;
}

struct Pick {
  std::string subtype;
  std::string surface;
};

// A sentence under construction: template text plus the embedded entity.
struct Sentence {
  std::string tmpl;
  std::string surface;  // empty for fillers
  std::string type;     // empty for distractors and fillers
  Polarity polarity = Polarity::kUnspecified;
};

size_t Below(std::mt19937_64& rng, size_t n) { return rng() % n; }

bool Chance(std::mt19937_64& rng, double p) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p;
}

template <typename T>
const T& Choose(std::mt19937_64& rng, const std::vector<T>& items) {
  return items[Below(rng, items.size())];
}

}  // namespace

const std::vector<std::string>& NegationCues() {
  static const std::vector<std::string> cues = {"denies", "no evidence of",
                                                "negative for", "without"};
  return cues;
}

bool IsNegatedIn(const Document& doc, std::string_view surface) {
  const std::u32string& chars = doc.chars();
  for (const CharSpan& span : Ground(doc, surface)) {
    size_t end = span.begin;
    if (end == 0 || !IsSpace(chars[end - 1])) continue;
    while (end > 0 && IsSpace(chars[end - 1])) --end;
    for (const std::string& cue : NegationCues()) {
      const std::u32string pattern = DecodeUtf8(cue);
      if (end < pattern.size()) continue;
      const size_t begin = end - pattern.size();
      std::u32string window = chars.substr(begin, pattern.size());
      for (char32_t& c : window) c = ToLower(c);
      // Whitespace inside multi-word cues must match loosely too.
      if (Normalize(window, {}) != pattern) continue;
      if (begin > 0 && IsWordChar(chars[begin - 1])) continue;
      return true;
    }
  }
  return false;
}

Corpus GenerateSynthetic(uint64_t seed, int n_docs, const Gazetteer& gazetteer,
                         const SyntheticOptions& options) {
  if (n_docs < 1) throw Error("synthetic corpus needs at least one document");
  if (gazetteer.empty()) throw Error("gazetteer is empty");
  gazetteer.Validate();
  if (options.min_entities < 0 || options.max_entities < options.min_entities) {
    throw Error("invalid synthetic entity count range");
  }

  std::vector<Pick> pool;
  std::set<std::string> seen;
  for (const auto& [subtype, surfaces] : gazetteer.subtypes) {
    for (const std::string& s : surfaces) {
      if (seen.insert(Normalize(s)).second) pool.push_back({subtype, s});
    }
  }
  std::vector<std::string> distractor_pool;
  for (const auto& [subtype, surfaces] : gazetteer.contamination) {
    for (const std::string& s : surfaces) {
      if (seen.insert(Normalize(s)).second) distractor_pool.push_back(s);
    }
  }

  Corpus corpus;
  std::set<std::string> target_names;
  for (const auto& [subtype, target] : gazetteer.targets) {
    target_names.insert(target);
  }
  for (const std::string& name : target_names) {
    corpus.catalog.push_back(EntityTypeSpec::Make(name));
  }

  std::mt19937_64 rng(seed);
  for (int d = 0; d < n_docs; ++d) {
    // Partial Fisher-Yates for sampling without replacement.
    auto sample = [&rng](auto items, size_t k) {
      k = std::min(k, items.size());
      for (size_t i = 0; i < k; ++i) {
        std::swap(items[i], items[i + Below(rng, items.size() - i)]);
      }
      items.resize(k);
      return items;
    };
    const size_t n_entities =
        options.min_entities +
        Below(rng, options.max_entities - options.min_entities + 1);
    const size_t n_distractors =
        distractor_pool.empty() ? 0 : Below(rng, options.max_distractors + 1);

    std::vector<Sentence> items;
    for (const Pick& pick : sample(pool, n_entities)) {
      Sentence s;
      s.surface = pick.surface;
      s.type = gazetteer.targets.at(pick.subtype);
      if (Chance(rng, options.negation_rate)) {
        s.tmpl = Choose(rng, NegationTemplates());
        s.polarity = Polarity::kNegative;
      } else {
        auto it = PositiveTemplates().find(s.type);
        s.tmpl = Choose(
            rng, it == PositiveTemplates().end() ? GenericTemplates() : it->second);
        s.polarity = Polarity::kPositive;
      }
      items.push_back(std::move(s));
    }
    for (const std::string& surface : sample(distractor_pool, n_distractors)) {
      items.push_back({Choose(rng, DistractorTemplates()), surface, "",
                       Polarity::kUnspecified});
    }

    const size_t n_paragraphs = 2 + Below(rng, Headers().size() - 1);
    std::vector<std::vector<Sentence>> paragraphs(n_paragraphs);
    for (auto& p : paragraphs) p.push_back({Choose(rng, Fillers()), "", ""});
    for (Sentence& s : items) {
      auto& p = paragraphs[Below(rng, n_paragraphs)];
      p.insert(p.begin() + static_cast<long>(Below(rng, p.size() + 1)),
               std::move(s));
    }

    std::string text;
    size_t offset = 0;
    auto append = [&](std::string_view piece) {
      text += piece;
      offset += Utf8Length(piece);
    };
    std::vector<GoldEntity> gold;
    for (size_t p = 0; p < n_paragraphs; ++p) {
      if (p > 0) append("\n\n");
      append(Headers()[p]);
      append("\n");
      for (size_t i = 0; i < paragraphs[p].size(); ++i) {
        const Sentence& s = paragraphs[p][i];
        if (i > 0) append(" ");
        const size_t slot = s.tmpl.find("{X}");
        if (slot == std::string::npos) {
          append(s.tmpl);
          continue;
        }
        append(std::string_view(s.tmpl).substr(0, slot));
        const size_t begin = offset;
        append(s.surface);
        if (!s.type.empty()) {
          gold.push_back({s.surface, {begin, offset}, s.type, s.polarity});
        }
        append(std::string_view(s.tmpl).substr(slot + 3));
      }
    }

    char id[32];
    std::snprintf(id, sizeof(id), "synth-%04d", d + 1);
    corpus.gold[id] = std::move(gold);
    corpus.documents.push_back(MakeDocument(id, std::move(text)));
  }
  corpus.Validate();
  return corpus;
}

}  // namespace edf
