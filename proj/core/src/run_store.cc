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

#include "edf/run_store.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "edf/error.h"
#include "json.hpp"

namespace edf {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kConfig = "config.json";
constexpr const char* kPredictions = "predictions.jsonl";
constexpr const char* kVerdicts = "verdicts.jsonl";
constexpr const char* kReport = "report.json";

json GoldJson(const GoldEntity& g) {
  json j = {{"text", g.surface},
            {"start", g.span.begin},
            {"end", g.span.end},
            {"type", g.type}};
  if (g.polarity != Polarity::kUnspecified) {
    j["polarity"] = std::string(ToString(g.polarity));
  }
  return j;
}

GoldEntity GoldFromJson(const json& j) {
  GoldEntity g;
  g.surface = j.at("text").get<std::string>();
  g.span = {j.at("start").get<size_t>(), j.at("end").get<size_t>()};
  g.type = j.at("type").get<std::string>();
  if (j.contains("polarity")) {
    g.polarity = ParsePolarity(j["polarity"].get<std::string>());
  }
  return g;
}

json RecordJson(const PredictionRecord& r) {
  json j = {{"doc_id", r.doc_id},
            {"entity_type", r.entity_type},
            {"status", r.ok ? "ok" : "failed"}};
  if (!r.ok) j["error"] = r.error;
  j["gold"] = json::array();
  for (const GoldEntity& g : r.gold) j["gold"].push_back(GoldJson(g));
  j["mentions"] = json::array();
  for (const Mention& m : r.mentions) {
    json spans = json::array();
    for (const CharSpan& s : m.spans) spans.push_back({s.begin, s.end});
    json mj = {{"surface", m.surface},
               {"normalized", m.normalized},
               {"origins", m.origins},
               {"spans", std::move(spans)}};
    if (m.verdict) mj["accepted"] = m.verdict->accepted;
    j["mentions"].push_back(std::move(mj));
  }
  return j;
}

json VerdictJson(const VerdictRecord& v) {
  return {{"doc_id", v.doc_id},
          {"surface", v.surface},
          {"entity_type", v.entity_type},
          {"answer", std::string(ToString(v.answer))},
          {"p_no", v.p_no},
          {"context_mode", v.context_mode}};
}

using VerdictKey = std::tuple<std::string, std::string, std::string>;

std::string ContextModeOf(const std::string& config_json) {
  try {
    const json j = json::parse(config_json);
    if (j.contains("filter") && j["filter"].contains("context")) {
      return j["filter"]["context"].get<std::string>();
    }
  } catch (const json::exception&) {
  }
  return "none";
}

std::vector<VerdictRecord> VerdictsOf(const PredictionRecord& r,
                                      const std::string& context_mode) {
  std::vector<VerdictRecord> out;
  for (const Mention& m : r.mentions) {
    if (!m.verdict) continue;
    out.push_back({r.doc_id, m.surface, r.entity_type, m.verdict->answer,
                   m.verdict->p_no, context_mode});
  }
  return out;
}

std::vector<std::string> ReadLines(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

bool IsBlank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

// Parses JSONL records. With lenient set, a malformed final line (an
// interrupted append) is dropped instead of reported.
template <typename Fn>
void ParseLines(const fs::path& path, bool lenient, Fn fn) {
  const std::vector<std::string> lines = ReadLines(path);
  for (size_t i = 0; i < lines.size(); ++i) {
    if (IsBlank(lines[i])) continue;
    try {
      fn(json::parse(lines[i]));
    } catch (const std::exception& e) {
      if (lenient && i + 1 == lines.size()) return;
      throw Error(path.filename().string() + " line " + std::to_string(i + 1) +
                  ": " + e.what());
    }
  }
}

PredictionRecord RecordFromJson(const json& j) {
  PredictionRecord r;
  r.doc_id = j.at("doc_id").get<std::string>();
  r.entity_type = j.at("entity_type").get<std::string>();
  const std::string status = j.at("status").get<std::string>();
  if (status != "ok" && status != "failed") throw Error("bad status " + status);
  r.ok = status == "ok";
  if (j.contains("error")) r.error = j["error"].get<std::string>();
  for (const json& g : j.at("gold")) r.gold.push_back(GoldFromJson(g));
  for (const json& mj : j.at("mentions")) {
    Mention m;
    m.surface = mj.at("surface").get<std::string>();
    m.normalized = mj.at("normalized").get<std::string>();
    m.origins = mj.at("origins").get<std::set<std::string>>();
    for (const json& s : mj.at("spans")) {
      m.spans.push_back({s.at(0).get<size_t>(), s.at(1).get<size_t>()});
    }
    if (mj.contains("accepted")) {
      // Answer and p_no are joined in from verdicts.jsonl.
      m.verdict = FilterVerdict{Answer::kYes, 0.0, mj["accepted"].get<bool>()};
    }
    r.mentions.push_back(std::move(m));
  }
  return r;
}

VerdictRecord VerdictFromJson(const json& j) {
  VerdictRecord v;
  v.doc_id = j.at("doc_id").get<std::string>();
  v.surface = j.at("surface").get<std::string>();
  v.entity_type = j.at("entity_type").get<std::string>();
  v.answer = ParseAnswer(j.at("answer").get<std::string>());
  if (!j.contains("p_no") || !j["p_no"].is_number()) {
    throw Error("verdict for '" + v.surface + "' has no p_no");
  }
  v.p_no = j["p_no"].get<double>();
  if (j.contains("context_mode")) {
    v.context_mode = j["context_mode"].get<std::string>();
  }
  return v;
}

// Fills answer and p_no of every filtered mention. Returns false (or
// throws, when strict) if a verdict is missing.
bool JoinVerdicts(PredictionRecord* r, const std::map<VerdictKey, VerdictRecord>& verdicts,
                  bool strict) {
  for (Mention& m : r->mentions) {
    if (!m.verdict) continue;
    auto it = verdicts.find({r->doc_id, r->entity_type, m.surface});
    if (it == verdicts.end()) {
      if (strict) {
        throw Error("verdicts.jsonl has no verdict for '" + m.surface +
                    "' in document " + r->doc_id);
      }
      return false;
    }
    m.verdict->answer = it->second.answer;
    m.verdict->p_no = it->second.p_no;
  }
  return true;
}

void WriteFile(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error("cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
}

void AppendFile(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw Error("cannot append to " + path.string());
  out << content;
  out.flush();
  if (!out) throw Error("cannot append to " + path.string());
}

std::string CanonicalConfig(const std::string& config_json) {
  json j = json::parse(config_json);
  if (!j.is_object()) throw ConfigError("run config must be a JSON object");
  return j.dump(2) + "\n";
}

}  // namespace

std::string RunArtifacts::mode() const {
  try {
    const json j = json::parse(config_json);
    if (j.contains("mode")) return j["mode"].get<std::string>();
  } catch (const json::exception&) {
  }
  return "";
}

NormalizationConfig RunArtifacts::normalization() const {
  NormalizationConfig cfg;
  try {
    const json j = json::parse(config_json);
    if (j.contains("normalization")) {
      const json& n = j["normalization"];
      cfg.lowercase = n.value("lowercase", cfg.lowercase);
      cfg.collapse_whitespace = n.value("collapse_whitespace", cfg.collapse_whitespace);
      cfg.strip_edge_punctuation =
          n.value("strip_edge_punctuation", cfg.strip_edge_punctuation);
    }
  } catch (const json::exception& e) {
    throw Error(std::string("malformed run config: ") + e.what());
  }
  return cfg;
}

std::vector<VerdictRecord> RunArtifacts::Verdicts() const {
  const std::string mode = ContextModeOf(config_json);
  std::vector<VerdictRecord> out;
  for (const PredictionRecord& r : predictions) {
    for (VerdictRecord& v : VerdictsOf(r, mode)) out.push_back(std::move(v));
  }
  return out;
}

void Canonicalize(std::vector<PredictionRecord>* records) {
  for (PredictionRecord& r : *records) {
    std::stable_sort(r.mentions.begin(), r.mentions.end(),
                     [](const Mention& a, const Mention& b) {
                       return a.normalized < b.normalized;
                     });
  }
  std::stable_sort(records->begin(), records->end(),
                   [](const PredictionRecord& a, const PredictionRecord& b) {
                     return std::tie(a.doc_id, a.entity_type) <
                            std::tie(b.doc_id, b.entity_type);
                   });
}

void PersistRun(const std::string& dir, const RunArtifacts& run) {
  fs::create_directories(dir);
  const fs::path root(dir);
  const std::string mode = ContextModeOf(run.config_json);
  std::string predictions;
  std::string verdicts;
  for (const PredictionRecord& r : run.predictions) {
    predictions += RecordJson(r).dump() + "\n";
    for (const VerdictRecord& v : VerdictsOf(r, mode)) {
      verdicts += VerdictJson(v).dump() + "\n";
    }
  }
  WriteFile(root / kConfig, CanonicalConfig(run.config_json));
  WriteFile(root / kVerdicts, verdicts);
  WriteFile(root / kPredictions, predictions);
  WriteFile(root / kReport, run.report.ToJson());
}

RunArtifacts LoadRun(const std::string& dir) {
  const fs::path root(dir);
  if (!fs::is_directory(root)) throw Error("run directory " + dir + " missing");
  for (const char* name : {kConfig, kPredictions, kVerdicts, kReport}) {
    if (!fs::exists(root / name)) throw Error(std::string(name) + " missing");
  }
  RunArtifacts run;
  {
    std::ifstream in(root / kConfig);
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
      run.config_json = CanonicalConfig(buffer.str());
    } catch (const json::exception& e) {
      throw Error(std::string("config.json: ") + e.what());
    }
  }
  std::map<VerdictKey, VerdictRecord> verdicts;
  ParseLines(root / kVerdicts, false, [&](const json& j) {
    VerdictRecord v = VerdictFromJson(j);
    verdicts[{v.doc_id, v.entity_type, v.surface}] = v;
  });
  ParseLines(root / kPredictions, false, [&](const json& j) {
    run.predictions.push_back(RecordFromJson(j));
  });
  for (PredictionRecord& r : run.predictions) JoinVerdicts(&r, verdicts, true);
  {
    std::ifstream in(root / kReport);
    std::stringstream buffer;
    buffer << in.rdbuf();
    run.report = EvalReport::FromJson(buffer.str());
  }
  return run;
}

RunWriter::RunWriter(std::string dir, std::string config_json, bool resume)
    : dir_(std::move(dir)), config_json_(CanonicalConfig(config_json)) {
  context_mode_ = ContextModeOf(config_json_);
  const fs::path root(dir_);
  fs::create_directories(root);
  const bool existing = fs::exists(root / kConfig);
  if (resume && existing) {
    std::ifstream in(root / kConfig);
    std::stringstream buffer;
    buffer << in.rdbuf();
    json stored;
    try {
      stored = json::parse(buffer.str());
    } catch (const json::exception& e) {
      throw Error(std::string("config.json: ") + e.what());
    }
    json current = json::parse(config_json_);
    stored.erase("concurrency");
    current.erase("concurrency");
    if (stored != current) {
      throw ConfigError("run directory " + dir_ +
                        " holds a run with a different configuration");
    }
    std::map<VerdictKey, VerdictRecord> verdicts;
    if (fs::exists(root / kVerdicts)) {
      ParseLines(root / kVerdicts, true, [&](const json& j) {
        VerdictRecord v = VerdictFromJson(j);
        verdicts[{v.doc_id, v.entity_type, v.surface}] = v;
      });
    }
    if (fs::exists(root / kPredictions)) {
      ParseLines(root / kPredictions, true, [&](const json& j) {
        PredictionRecord r = RecordFromJson(j);
        const auto key = std::make_pair(r.doc_id, r.entity_type);
        if (r.ok && JoinVerdicts(&r, verdicts, false)) {
          completed_[key] = std::move(r);
        } else {
          completed_.erase(key);
        }
      });
    }
  }
  // Start the files over with just the completed records.
  std::string predictions;
  std::string verdicts;
  for (const auto& [key, r] : completed_) {
    predictions += RecordJson(r).dump() + "\n";
    for (const VerdictRecord& v : VerdictsOf(r, context_mode_)) {
      verdicts += VerdictJson(v).dump() + "\n";
    }
  }
  fs::remove(root / kReport);
  WriteFile(root / kConfig, config_json_);
  WriteFile(root / kVerdicts, verdicts);
  WriteFile(root / kPredictions, predictions);
}

void RunWriter::Append(const PredictionRecord& record) {
  std::string verdicts;
  for (const VerdictRecord& v : VerdictsOf(record, context_mode_)) {
    verdicts += VerdictJson(v).dump() + "\n";
  }
  const std::string line = RecordJson(record).dump() + "\n";
  std::lock_guard<std::mutex> lock(mu_);
  const fs::path root(dir_);
  // Verdicts first: a prediction line marks its record as complete.
  if (!verdicts.empty()) AppendFile(root / kVerdicts, verdicts);
  AppendFile(root / kPredictions, line);
}

void RunWriter::Finish(std::vector<PredictionRecord> records,
                       const EvalReport& report) {
  Canonicalize(&records);
  RunArtifacts run;
  run.config_json = config_json_;
  run.predictions = std::move(records);
  run.report = report;
  std::lock_guard<std::mutex> lock(mu_);
  PersistRun(dir_, run);
}

}  // namespace edf
