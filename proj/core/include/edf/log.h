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

#ifndef EDF_LOG_H_
#define EDF_LOG_H_

#include <functional>
#include <string_view>

namespace edf {

using WarningSink = std::function<void(std::string_view)>;

// Emits a warning through the installed sink (stderr by default).
// Thread-safe.
void Warn(std::string_view message);

// Replaces the process-wide sink and returns the previous one. Passing an
// empty function restores the stderr sink.
WarningSink SetWarningSink(WarningSink sink);

}  // namespace edf

#endif  // EDF_LOG_H_
