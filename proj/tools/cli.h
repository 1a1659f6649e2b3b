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

#ifndef EDF_TOOLS_CLI_H_
#define EDF_TOOLS_CLI_H_

#include <iosfwd>

namespace edf::cli {

// Exit codes: 0 success, 1 usage or configuration error, 2 runtime failure.
int Main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace edf::cli

#endif  // EDF_TOOLS_CLI_H_
