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

#ifndef EDF_BIO_H_
#define EDF_BIO_H_

#include <string>
#include <string_view>
#include <vector>

namespace edf {

struct BioTag {
  enum class Kind { kOutside, kBegin, kInside };
  Kind kind = Kind::kOutside;
  std::string type;  // empty for kOutside

  friend bool operator==(const BioTag&, const BioTag&) = default;
};

// Parses "O", "B-<type>" or "I-<type>". Throws edf::Error on anything else,
// including an empty type.
BioTag ParseBioTag(std::string_view label);
std::string FormatBioTag(const BioTag& tag);

// Token range [begin, end) tagged as one entity.
struct BioEntity {
  size_t begin = 0;
  size_t end = 0;
  std::string type;

  friend bool operator==(const BioEntity&, const BioEntity&) = default;
};

struct BioWarning {
  size_t token = 0;
  std::string message;
};

struct BioDecodeResult {
  std::vector<BioEntity> entities;
  std::vector<BioWarning> warnings;
};

// Groups maximal B-X (I-X)* runs into entities. An I-X that does not
// continue an entity of type X opens a new entity and records a warning.
BioDecodeResult DecodeBio(const std::vector<BioTag>& tags);

}  // namespace edf

#endif  // EDF_BIO_H_
