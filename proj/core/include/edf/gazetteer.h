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

#ifndef EDF_GAZETTEER_H_
#define EDF_GAZETTEER_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace edf {

// Surface lists per entity sub-type. Drives the mock NER backend and the
// synthetic corpus generator.
struct Gazetteer {
  // sub-type -> on-type surfaces
  std::map<std::string, std::vector<std::string>> subtypes;
  // sub-type -> target entity type its surfaces are annotated as
  std::map<std::string, std::string> targets;
  // sub-type -> off-type surfaces a noisy model wrongly returns for it
  std::map<std::string, std::vector<std::string>> contamination;

  // Case-insensitive lookups; nullptr/empty when absent.
  const std::vector<std::string>* Surfaces(std::string_view subtype) const;
  const std::vector<std::string>* Contamination(std::string_view subtype) const;

  bool empty() const { return subtypes.empty(); }

  // Throws edf::Error when a declared sub-type has no surfaces or no
  // target, when contamination names an unknown sub-type, or when a
  // contamination surface is also an on-type surface.
  void Validate() const;

  std::string ToJson() const;
  static Gazetteer FromJson(std::string_view text);
  static Gazetteer Load(const std::string& path);

  // Clinical gazetteer covering treatment, problem and test sub-types.
  static const Gazetteer& Builtin();

  friend bool operator==(const Gazetteer&, const Gazetteer&) = default;
};

}  // namespace edf

#endif  // EDF_GAZETTEER_H_
