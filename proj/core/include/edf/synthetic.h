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

#ifndef EDF_SYNTHETIC_H_
#define EDF_SYNTHETIC_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "edf/corpus.h"
#include "edf/gazetteer.h"

namespace edf {

// Negation cues used by the generator's negation templates. An entity that
// directly follows one of these (case-insensitively, separated by
// whitespace) is negated.
const std::vector<std::string>& NegationCues();

// True when some grounded occurrence of surface in doc directly follows a
// negation cue.
bool IsNegatedIn(const Document& doc, std::string_view surface);

struct SyntheticOptions {
  // Entities embedded per document, drawn uniformly from [min, max].
  int min_entities = 3;
  int max_entities = 8;
  // Contamination surfaces embedded per document (never annotated).
  int max_distractors = 3;
  // Probability that an embedded entity uses a negation template.
  double negation_rate = 0.25;
};

// Templated clinical-style notes embedding gazetteer surfaces at known
// offsets. Each surface occurs at most once per document. Gold types follow
// gazetteer.targets; negation-templated entities get negative polarity and
// the rest positive. Byte-identical output for a fixed seed.
Corpus GenerateSynthetic(uint64_t seed, int n_docs, const Gazetteer& gazetteer,
                         const SyntheticOptions& options = {});

}  // namespace edf

#endif  // EDF_SYNTHETIC_H_
