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

#ifndef EDF_PROMPTS_H_
#define EDF_PROMPTS_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace edf {

// Template ids shipped under assets/templates/:
//   uniner, gner, asclepius, llama2     model prompt formats
//   uniner_instruction, gner_instruction
//   filter_default, filter_described    Yes/No filter questions
//   decompose                           sub-type generation prompt
std::vector<std::string> TemplateIds();

// Raw template text. Throws edf::Error for unknown ids.
std::string_view TemplateText(std::string_view template_id);

using PromptSlots = std::map<std::string, std::string, std::less<>>;

// Substitutes every "{slot}" in the template in one pass (substituted text
// is never rescanned). Throws edf::Error for an unknown template id or a
// slot the template uses but slots lacks.
std::string RenderPrompt(std::string_view template_id, const PromptSlots& slots);

// The instruction a NER model template expects for the given entity types:
// one type for uniner, the full label set for gner.
std::string NerInstruction(std::string_view template_id,
                           const std::vector<std::string>& entity_types);

}  // namespace edf

#endif  // EDF_PROMPTS_H_
