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

#include "edf/gazetteer.h"

#include <fstream>
#include <set>
#include <sstream>

#include "edf/error.h"
#include "edf/normalize.h"
#include "json.hpp"

namespace edf {
namespace {

template <typename Map>
auto FindFolded(const Map& map, std::string_view key) {
  const std::string folded = FoldCase(key);
  for (auto it = map.begin(); it != map.end(); ++it) {
    if (FoldCase(it->first) == folded) return it;
  }
  return map.end();
}

Gazetteer MakeBuiltin() {
  Gazetteer g;
  auto add = [&g](std::string subtype, std::string target,
                  std::vector<std::string> surfaces,
                  std::vector<std::string> contamination = {}) {
    g.targets[subtype] = std::move(target);
    if (!contamination.empty()) g.contamination[subtype] = std::move(contamination);
    g.subtypes[std::move(subtype)] = std::move(surfaces);
  };
  add("drug", "treatment",
      {"aspirin", "metoprolol", "lisinopril", "heparin", "warfarin",
       "furosemide", "vancomycin", "ceftriaxone"});
  add("medication", "treatment",
      {"atorvastatin", "omeprazole", "acetaminophen", "prednisone",
       "albuterol", "gabapentin"});
  add("medical procedure", "treatment",
      {"appendectomy", "cardiac catheterization", "hemodialysis",
       "cholecystectomy", "intubation"},
      {"endoscopy", "colonoscopy", "bronchoscopy", "lumbar puncture"});
  add("medical device", "treatment",
      {"pacemaker", "insulin pump", "foley catheter"});
  add("biological substance", "treatment",
      {"fresh frozen plasma", "albumin"}, {"lactate"});
  add("treatment", "treatment",
      {"chemotherapy", "physical therapy", "radiation therapy",
       "blood transfusion"});
  add("disease", "problem",
      {"pneumonia", "hypertension", "diabetes mellitus", "atrial fibrillation",
       "cellulitis"},
      {"influenza vaccine"});
  add("symptom", "problem",
      {"chest pain", "shortness of breath", "nausea", "fever", "dizziness"});
  add("injury", "problem", {"hip fracture", "laceration", "concussion"});
  add("medical problem", "problem",
      {"anemia", "hyponatremia", "acute kidney injury"});
  add("problem", "problem", {"delirium", "sepsis"});
  add("laboratory procedure", "test",
      {"complete blood count", "basic metabolic panel", "blood cultures",
       "urinalysis"});
  add("diagnostic procedure", "test",
      {"echocardiogram", "chest x-ray", "ct scan", "electrocardiogram",
       "mri"});
  add("vital sign", "test",
      {"blood pressure", "heart rate", "oxygen saturation",
       "respiratory rate"});
  add("test", "test", {"troponin", "lipase", "serum creatinine"});
  return g;
}

}  // namespace

const std::vector<std::string>* Gazetteer::Surfaces(
    std::string_view subtype) const {
  auto it = FindFolded(subtypes, subtype);
  return it == subtypes.end() ? nullptr : &it->second;
}

const std::vector<std::string>* Gazetteer::Contamination(
    std::string_view subtype) const {
  auto it = FindFolded(contamination, subtype);
  return it == contamination.end() ? nullptr : &it->second;
}

void Gazetteer::Validate() const {
  if (subtypes.empty()) throw Error("gazetteer is empty");
  std::set<std::string> on_type;
  for (const auto& [subtype, surfaces] : subtypes) {
    if (surfaces.empty()) {
      throw Error("gazetteer sub-type '" + subtype + "' has no surfaces");
    }
    if (FindFolded(targets, subtype) == targets.end()) {
      throw Error("gazetteer sub-type '" + subtype + "' has no target type");
    }
    for (const std::string& s : surfaces) {
      if (Normalize(s).empty()) {
        throw Error("gazetteer sub-type '" + subtype + "' has an empty surface");
      }
      on_type.insert(Normalize(s));
    }
  }
  for (const auto& [subtype, surfaces] : contamination) {
    if (Surfaces(subtype) == nullptr) {
      throw Error("gazetteer contamination names unknown sub-type '" +
                  subtype + "'");
    }
    for (const std::string& s : surfaces) {
      if (on_type.count(Normalize(s)) > 0) {
        throw Error("gazetteer contamination surface '" + s +
                    "' is also an on-type surface");
      }
    }
  }
}

std::string Gazetteer::ToJson() const {
  nlohmann::ordered_json j;
  j["subtypes"] = subtypes;
  j["targets"] = targets;
  j["contamination"] = contamination;
  return j.dump(2) + "\n";
}

Gazetteer Gazetteer::FromJson(std::string_view text) {
  Gazetteer g;
  try {
    const nlohmann::json j = nlohmann::json::parse(text);
    g.subtypes = j.at("subtypes")
                     .get<std::map<std::string, std::vector<std::string>>>();
    g.targets = j.at("targets").get<std::map<std::string, std::string>>();
    if (j.contains("contamination")) {
      g.contamination =
          j.at("contamination")
              .get<std::map<std::string, std::vector<std::string>>>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed gazetteer: ") + e.what());
  }
  g.Validate();
  return g;
}

Gazetteer Gazetteer::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open gazetteer " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return FromJson(buffer.str());
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

const Gazetteer& Gazetteer::Builtin() {
  static const Gazetteer builtin = MakeBuiltin();
  return builtin;
}

}  // namespace edf
