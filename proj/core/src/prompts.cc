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

#include "edf/prompts.h"

#include "edf/error.h"

namespace edf {
namespace internal {
// Defined in the generated templates.cc.
const std::map<std::string, std::string_view, std::less<>>& EmbeddedTemplates();
}  // namespace internal

std::vector<std::string> TemplateIds() {
  std::vector<std::string> ids;
  for (const auto& [id, text] : internal::EmbeddedTemplates()) ids.push_back(id);
  return ids;
}

std::string_view TemplateText(std::string_view template_id) {
  const auto& templates = internal::EmbeddedTemplates();
  auto it = templates.find(template_id);
  if (it == templates.end()) {
    throw Error("unknown prompt template '" + std::string(template_id) + "'");
  }
  return it->second;
}

std::string RenderPrompt(std::string_view template_id,
                         const PromptSlots& slots) {
  const std::string_view text = TemplateText(template_id);
  std::string out;
  out.reserve(text.size() + 256);
  size_t pos = 0;
  while (pos < text.size()) {
    const size_t open = text.find('{', pos);
    if (open == std::string_view::npos) {
      out.append(text.substr(pos));
      break;
    }
    const size_t close = text.find('}', open + 1);
    if (close == std::string_view::npos) {
      out.append(text.substr(pos));
      break;
    }
    const std::string_view name = text.substr(open + 1, close - open - 1);
    out.append(text.substr(pos, open - pos));
    auto it = slots.find(name);
    if (it == slots.end()) {
      throw Error("template '" + std::string(template_id) +
                  "' needs slot '" + std::string(name) + "'");
    }
    out.append(it->second);
    pos = close + 1;
  }
  return out;
}

std::string NerInstruction(std::string_view template_id,
                           const std::vector<std::string>& entity_types) {
  if (entity_types.empty()) throw Error("no entity types for the instruction");
  if (template_id == "uniner") {
    if (entity_types.size() != 1) {
      throw Error("uniner extracts one entity type per call");
    }
    return RenderPrompt("uniner_instruction",
                        {{"entity_type", entity_types.front()}});
  }
  if (template_id == "gner") {
    std::string labels;
    for (size_t i = 0; i < entity_types.size(); ++i) {
      if (i > 0) labels += ", ";
      labels += entity_types[i];
    }
    return RenderPrompt("gner_instruction", {{"labels", labels}});
  }
  throw Error("template '" + std::string(template_id) +
              "' is not a NER model template");
}

}  // namespace edf
