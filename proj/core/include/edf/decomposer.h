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

#ifndef EDF_DECOMPOSER_H_
#define EDF_DECOMPOSER_H_

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "edf/backend.h"
#include "edf/types.h"

namespace edf {

// Curated sub-type lists keyed by (source, target type). Target lookups
// ignore case and treat '-', '_' and '/' as spaces.
class DecomposerRegistry {
 public:
  DecomposerRegistry() = default;

  // Annotation-guideline, ChatGPT and UMLS lists for the clinical types.
  static const DecomposerRegistry& Builtin();

  // Replaces any existing list for the pair.
  void Add(DecomposerSource source, std::string target,
           std::vector<std::string> subtypes);

  // nullptr when the pair is unknown.
  const std::vector<std::string>* Find(DecomposerSource source,
                                       std::string_view target) const;

  // Registered pairs, in insertion order, with targets as given.
  std::vector<std::pair<DecomposerSource, std::string>> Keys() const;

 private:
  struct Entry {
    DecomposerSource source;
    std::string target;
    std::string key;
    std::vector<std::string> subtypes;
  };
  std::vector<Entry> entries_;
};

// Sub-types for a registry source, verbatim. Throws edf::ConfigError for an
// unknown (source, target) pair.
SubTypeSet Decompose(const EntityTypeSpec& target, DecomposerSource source,
                     const DecomposerRegistry& registry =
                         DecomposerRegistry::Builtin());

// Asks a model for the sub-types of target and parses the list. Duplicates
// and empty items are dropped and the target is appended if missing.
// Throws edf::BackendError (carrying the raw text) when no list is found.
SubTypeSet DecomposeLlm(const EntityTypeSpec& target, CompletionClient& client,
                        const CompletionRequest& decoding = {});

// Appends the target name unless already present (case-insensitive).
SubTypeSet EnsureTargetIncluded(const SubTypeSet& set);

// One sub-type per line; blank lines and lines starting with '#' are
// skipped.
SubTypeSet LoadCustomSubtypes(const std::string& path, std::string target);
SubTypeSet ParseCustomSubtypes(std::string_view text, std::string target);

}  // namespace edf

#endif  // EDF_DECOMPOSER_H_
