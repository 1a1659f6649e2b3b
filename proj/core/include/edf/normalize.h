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

#ifndef EDF_NORMALIZE_H_
#define EDF_NORMALIZE_H_

#include <string>
#include <string_view>
#include <vector>

#include "edf/types.h"

namespace edf {

// Canonical form used for deduplication and exact matching. Deterministic
// and idempotent for every configuration.
std::string Normalize(std::string_view text,
                      const NormalizationConfig& config = {});
std::u32string Normalize(std::u32string_view text,
                         const NormalizationConfig& config);

// Lowercase only; used for case-insensitive name lookups.
std::string FoldCase(std::string_view text);

// Trims ASCII and Unicode whitespace from both ends.
std::string Trim(std::string_view text);

// Maximal runs of letters/digits of Normalize(text, config).
std::vector<std::string> WordTokens(std::string_view text,
                                    const NormalizationConfig& config = {});

}  // namespace edf

#endif  // EDF_NORMALIZE_H_
