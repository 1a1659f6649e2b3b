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

#include "edf/decomposer.h"

#include <fstream>
#include <sstream>

#include "edf/error.h"
#include "edf/normalize.h"
#include "edf/parsers.h"
#include "edf/prompts.h"

namespace edf {
namespace {

std::string TargetKey(std::string_view target) {
  std::string key = FoldCase(Trim(target));
  for (char& c : key) {
    if (c == '-' || c == '_' || c == '/') c = ' ';
  }
  return Normalize(key);
}

std::vector<std::string> Split(std::string_view list) {
  std::vector<std::string> out;
  size_t start = 0;
  while (start <= list.size()) {
    size_t comma = list.find(',', start);
    if (comma == std::string_view::npos) comma = list.size();
    out.push_back(Trim(list.substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

DecomposerRegistry MakeBuiltin() {
  DecomposerRegistry r;
  const auto A = DecomposerSource::kAnnotation;
  const auto L = DecomposerSource::kLlmGenerated;
  const auto U = DecomposerSource::kUmls;
  r.Add(A, "treatment",
        Split("medical treatment, medical intervention, medical procedure, "
              "medical device, treatment, biological substance, drug, "
              "medication"));
  r.Add(A, "problem",
        Split("medical problem, disease, syndrome, symptom, medical condition, "
              "behavior, virus, bacterium, injury, abnormality, abnormal test "
              "result, mental status"));
  r.Add(A, "test",
        Split("medical test, medical procedure, medical panel, medical "
              "examination, medical evaluation, test, procedure, laboratory "
              "procedure, diagnostic procedure, panel, measure, physiologic "
              "measure, vital sign, examination, evaluation"));
  r.Add(A, "clinical department",
        Split("clinical department, medical department, clinical unit, "
              "clinical service, clinical practice, clinical room, department, "
              "location, building, hospital"));
  r.Add(A, "disease/disorder",
        Split("medical problem, disease, syndrome, symptom, medical condition, "
              "behavior, virus, bacterium, injury, abnormality, abnormal test "
              "result"));
  r.Add(A, "adverse drug", Split("drug"));
  r.Add(A, "adverse drug event", Split("medical problem"));

  r.Add(L, "treatment",
        Split("medical treatment, medication, medical procedure, therapy, "
              "medical intervention, consultation, counseling, discharge "
              "instruction, supportive care"));
  r.Add(L, "problem",
        Split("medical problem, medical diagnosis, disease, abnormal test "
              "result, symptom, abnormal imaging finding, complication, "
              "chronic health condition, medication side effect, mental health "
              "issue, social determinants of health"));
  r.Add(L, "test",
        Split("medical test, laboratory test, imaging study, diagnostic "
              "procedure, genetic test, electrodiagnostic test, functional "
              "test, microbiological test"));

  r.Add(U, "treatment",
        Split("medical treatment, therapeutic procedure, preventive procedure, "
              "medical device, steroid, pharmacologic substance, biomedical "
              "material, dental material, antibiotic, clinical drug, drug "
              "delivery device"));
  r.Add(U, "problem",
        Split("medical problem, pathologic function, disease, syndrome, mental "
              "dysfunction, behavioral dysfunction, cell dysfunction, molecular "
              "dysfunction, congenital abnormality, acquired abnormality, "
              "injury, poisoning, anatomic abnormality, neoplastic process, "
              "virus, bacterium, symptom"));
  r.Add(U, "test",
        Split("medical test, laboratory procedure, diagnostic procedure"));
  return r;
}

}  // namespace

const DecomposerRegistry& DecomposerRegistry::Builtin() {
  static const DecomposerRegistry* registry =
      new DecomposerRegistry(MakeBuiltin());
  return *registry;
}

void DecomposerRegistry::Add(DecomposerSource source, std::string target,
                             std::vector<std::string> subtypes) {
  std::string key = TargetKey(target);
  for (Entry& e : entries_) {
    if (e.source == source && e.key == key) {
      e.target = std::move(target);
      e.subtypes = std::move(subtypes);
      return;
    }
  }
  entries_.push_back(
      {source, std::move(target), std::move(key), std::move(subtypes)});
}

const std::vector<std::string>* DecomposerRegistry::Find(
    DecomposerSource source, std::string_view target) const {
  const std::string key = TargetKey(target);
  for (const Entry& e : entries_) {
    if (e.source == source && e.key == key) return &e.subtypes;
  }
  return nullptr;
}

std::vector<std::pair<DecomposerSource, std::string>> DecomposerRegistry::Keys()
    const {
  std::vector<std::pair<DecomposerSource, std::string>> keys;
  for (const Entry& e : entries_) keys.emplace_back(e.source, e.target);
  return keys;
}

SubTypeSet Decompose(const EntityTypeSpec& target, DecomposerSource source,
                     const DecomposerRegistry& registry) {
  if (source == DecomposerSource::kCustom) {
    throw ConfigError("custom sub-types for '" + target.name +
                      "' must be loaded from a file");
  }
  const auto* list = registry.Find(source, target.name);
  if (!list) {
    throw ConfigError("no " + std::string(ToString(source)) +
                      " sub-types for entity type '" + target.name + "'");
  }
  return SubTypeSet(target.name, source, *list);
}

SubTypeSet DecomposeLlm(const EntityTypeSpec& target, CompletionClient& client,
                        const CompletionRequest& decoding) {
  CompletionRequest request = decoding;
  request.prompt = RenderPrompt("decompose", {{"entity_type", target.name}});
  request.constraint = Constraint::kNone;
  CompletionResponse response;
  try {
    response = client.Complete(request);
  } catch (const BackendError& e) {
    throw BackendError("decomposing '" + target.name + "': " + e.what(),
                       e.status(), e.raw());
  }
  std::vector<std::string> subtypes;
  for (std::string& item : ParseEntityList(response.text)) {
    item = Trim(item);
    if (item.empty()) continue;
    const std::string folded = FoldCase(item);
    bool seen = false;
    for (const std::string& s : subtypes) seen = seen || FoldCase(s) == folded;
    if (!seen) subtypes.push_back(std::move(item));
  }
  if (subtypes.empty()) {
    throw BackendError("no sub-types found in decomposer response", 0,
                       response.text);
  }
  return EnsureTargetIncluded(
      SubTypeSet(target.name, DecomposerSource::kLlmGenerated, subtypes));
}

SubTypeSet EnsureTargetIncluded(const SubTypeSet& set) {
  if (set.Contains(set.target())) return set;
  std::vector<std::string> subtypes = set.subtypes();
  subtypes.push_back(set.target());
  return SubTypeSet(set.target(), set.source(), std::move(subtypes));
}

SubTypeSet ParseCustomSubtypes(std::string_view text, std::string target) {
  std::vector<std::string> subtypes;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    std::string item = Trim(line);
    if (item.empty() || item.front() == '#') continue;
    subtypes.push_back(std::move(item));
  }
  if (subtypes.empty()) throw ConfigError("sub-type list is empty");
  return SubTypeSet(std::move(target), DecomposerSource::kCustom,
                    std::move(subtypes));
}

SubTypeSet LoadCustomSubtypes(const std::string& path, std::string target) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read sub-type file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseCustomSubtypes(buffer.str(), std::move(target));
}

}  // namespace edf
