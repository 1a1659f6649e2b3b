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

#ifndef EDF_SRC_HASH_H_
#define EDF_SRC_HASH_H_

#include <cstdint>
#include <initializer_list>
#include <string_view>

namespace edf {
namespace internal {

// FNV-1a over the parts (with separators), finished with a splitmix64
// round. Stable across platforms and runs.
inline uint64_t StableHash(std::initializer_list<std::string_view> parts,
                           uint64_t seed) {
  uint64_t h = 0xcbf29ce484222325ULL ^ seed;
  for (std::string_view part : parts) {
    for (unsigned char c : part) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    h ^= 0xff;
    h *= 0x100000001b3ULL;
  }
  h += 0x9e3779b97f4a7c15ULL;
  h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ULL;
  h = (h ^ (h >> 27)) * 0x94d049bb133111ebULL;
  return h ^ (h >> 31);
}

// Maps a hash to [0, 1) using its top 53 bits.
inline double UnitInterval(uint64_t h) {
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

}  // namespace internal
}  // namespace edf

#endif  // EDF_SRC_HASH_H_
