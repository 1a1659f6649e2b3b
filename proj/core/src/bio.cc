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

#include "edf/bio.h"

#include "edf/error.h"

namespace edf {

BioTag ParseBioTag(std::string_view label) {
  if (label == "O") return {};
  if (label.size() > 2 && label[1] == '-' &&
      (label[0] == 'B' || label[0] == 'I')) {
    return {label[0] == 'B' ? BioTag::Kind::kBegin : BioTag::Kind::kInside,
            std::string(label.substr(2))};
  }
  throw Error("unknown BIO tag '" + std::string(label) + "'");
}

std::string FormatBioTag(const BioTag& tag) {
  switch (tag.kind) {
    case BioTag::Kind::kOutside:
      return "O";
    case BioTag::Kind::kBegin:
      return "B-" + tag.type;
    case BioTag::Kind::kInside:
      return "I-" + tag.type;
  }
  return "O";
}

BioDecodeResult DecodeBio(const std::vector<BioTag>& tags) {
  BioDecodeResult result;
  bool open = false;
  for (size_t i = 0; i < tags.size(); ++i) {
    const BioTag& tag = tags[i];
    switch (tag.kind) {
      case BioTag::Kind::kOutside:
        open = false;
        break;
      case BioTag::Kind::kBegin:
        result.entities.push_back({i, i + 1, tag.type});
        open = true;
        break;
      case BioTag::Kind::kInside:
        if (open && result.entities.back().type == tag.type) {
          result.entities.back().end = i + 1;
        } else {
          result.warnings.push_back(
              {i, "I-" + tag.type +
                      " does not continue an entity of that type; treated "
                      "as B-" +
                      tag.type});
          result.entities.push_back({i, i + 1, tag.type});
          open = true;
        }
        break;
    }
  }
  return result;
}

}  // namespace edf
