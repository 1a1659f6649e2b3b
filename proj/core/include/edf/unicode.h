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

#ifndef EDF_UNICODE_H_
#define EDF_UNICODE_H_

#include <string>
#include <string_view>

namespace edf {

// Decodes UTF-8 into scalar values. Each byte of an ill-formed sequence
// decodes to U+FFFD, so the result is total over arbitrary input.
std::u32string DecodeUtf8(std::string_view text);

std::string EncodeUtf8(std::u32string_view text);
void AppendUtf8(char32_t c, std::string* out);

// Number of scalar values DecodeUtf8 would produce.
size_t Utf8Length(std::string_view text);

bool IsSpace(char32_t c);

// Simple case folding for Latin-1, Latin Extended-A, Greek and Cyrillic.
// Other scripts pass through unchanged.
char32_t ToLower(char32_t c);

// Letters and digits. Non-ASCII code points outside the known punctuation
// and symbol blocks count as letters.
bool IsWordChar(char32_t c);

// ASCII punctuation plus the Latin-1 and General Punctuation blocks.
bool IsPunct(char32_t c);

}  // namespace edf

#endif  // EDF_UNICODE_H_
