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

#include "edf/eval.h"

#include <charconv>
#include <cmath>
#include <ostream>
#include <set>
#include <unordered_map>

#include "edf/error.h"
#include "edf/filter.h"
#include "edf/normalize.h"
#include "json.hpp"

namespace edf {

using nlohmann::json;

Prf ComputePrf(const MatchCounts& c) {
  Prf m;
  if (c.tp + c.fp > 0) m.precision = static_cast<double>(c.tp) / (c.tp + c.fp);
  if (c.tp + c.fn > 0) m.recall = static_cast<double>(c.tp) / (c.tp + c.fn);
  if (m.precision + m.recall > 0) {
    m.f1 = 2 * m.precision * m.recall / (m.precision + m.recall);
  }
  return m;
}

MatchCounts ExactMatch(const std::vector<std::string>& preds,
                       const std::vector<std::string>& golds,
                       const NormalizationConfig& config) {
  std::unordered_map<std::string, int64_t> available;
  for (const std::string& g : golds) ++available[Normalize(g, config)];
  MatchCounts c;
  for (const std::string& p : preds) {
    auto it = available.find(Normalize(p, config));
    if (it != available.end() && it->second > 0) {
      --it->second;
      ++c.tp;
    }
  }
  c.fp = static_cast<int64_t>(preds.size()) - c.tp;
  c.fn = static_cast<int64_t>(golds.size()) - c.tp;
  return c;
}

namespace {

std::vector<std::string> Surfaces(const std::vector<Mention>& mentions) {
  std::vector<std::string> out;
  out.reserve(mentions.size());
  for (const Mention& m : mentions) out.push_back(m.surface);
  return out;
}

std::vector<std::string> Surfaces(const std::vector<GoldEntity>& golds) {
  std::vector<std::string> out;
  out.reserve(golds.size());
  for (const GoldEntity& g : golds) out.push_back(g.surface);
  return out;
}

bool HasVerdicts(const std::vector<PredictionRecord>& records) {
  for (const PredictionRecord& r : records) {
    for (const Mention& m : r.mentions) {
      if (m.verdict) return true;
    }
  }
  return false;
}

json CountsJson(const MatchCounts& c, const Prf& m) {
  return {{"tp", c.tp},
          {"fp", c.fp},
          {"fn", c.fn},
          {"precision", m.precision},
          {"recall", m.recall},
          {"f1", m.f1}};
}

void ReadCounts(const json& j, MatchCounts* c, Prf* m) {
  c->tp = j.at("tp").get<int64_t>();
  c->fp = j.at("fp").get<int64_t>();
  c->fn = j.at("fn").get<int64_t>();
  m->precision = j.at("precision").get<double>();
  m->recall = j.at("recall").get<double>();
  m->f1 = j.at("f1").get<double>();
}

template <typename Pick>
EvalReport Score(const std::vector<PredictionRecord>& records,
                 const NormalizationConfig& config, Pick pick) {
  EvalReport report;
  std::map<std::string, MatchCounts> by_type;
  std::map<std::string, MatchCounts> by_doc;
  for (const PredictionRecord& r : records) {
    if (!r.ok) {
      report.failures.push_back({r.doc_id, r.entity_type, r.error});
      continue;
    }
    const MatchCounts c = ExactMatch(pick(r), r.gold, config);
    report.counts += c;
    by_type[r.entity_type] += c;
    by_doc[r.doc_id] += c;
  }
  report.metrics = ComputePrf(report.counts);
  for (const auto& [key, c] : by_type) {
    report.per_type.push_back({key, c, ComputePrf(c)});
  }
  for (const auto& [key, c] : by_doc) {
    report.per_document.push_back({key, c, ComputePrf(c)});
  }
  return report;
}

}  // namespace

MatchCounts ExactMatch(const std::vector<Mention>& preds,
                       const std::vector<GoldEntity>& golds,
                       const NormalizationConfig& config) {
  return ExactMatch(Surfaces(preds), Surfaces(golds), config);
}

std::vector<Mention> PredictionRecord::Final() const {
  std::vector<Mention> out;
  for (const Mention& m : mentions) {
    if (!m.verdict || m.verdict->accepted) out.push_back(m);
  }
  return out;
}

std::vector<Mention> PredictionRecord::FinalAt(double threshold) const {
  std::vector<Mention> out;
  for (const Mention& m : mentions) {
    if (!m.verdict ||
        ApplyThreshold(m.verdict->answer, m.verdict->p_no, threshold)) {
      out.push_back(m);
    }
  }
  return out;
}

std::string EvalReport::ToJson() const {
  json j = CountsJson(counts, metrics);
  j["per_type"] = json::array();
  for (const EvalRow& row : per_type) {
    json r = CountsJson(row.counts, row.metrics);
    r["type"] = row.key;
    j["per_type"].push_back(std::move(r));
  }
  j["per_document"] = json::array();
  for (const EvalRow& row : per_document) {
    json r = CountsJson(row.counts, row.metrics);
    r["doc_id"] = row.key;
    j["per_document"].push_back(std::move(r));
  }
  j["failures"] = json::array();
  for (const EvalFailure& f : failures) {
    j["failures"].push_back(
        {{"doc_id", f.doc_id}, {"entity_type", f.entity_type}, {"error", f.error}});
  }
  return j.dump(2) + "\n";
}

EvalReport EvalReport::FromJson(std::string_view text) {
  EvalReport report;
  try {
    const json j = json::parse(text);
    ReadCounts(j, &report.counts, &report.metrics);
    for (const json& r : j.at("per_type")) {
      EvalRow row;
      row.key = r.at("type").get<std::string>();
      ReadCounts(r, &row.counts, &row.metrics);
      report.per_type.push_back(std::move(row));
    }
    for (const json& r : j.at("per_document")) {
      EvalRow row;
      row.key = r.at("doc_id").get<std::string>();
      ReadCounts(r, &row.counts, &row.metrics);
      report.per_document.push_back(std::move(row));
    }
    for (const json& f : j.at("failures")) {
      report.failures.push_back({f.at("doc_id").get<std::string>(),
                                 f.at("entity_type").get<std::string>(),
                                 f.at("error").get<std::string>()});
    }
  } catch (const json::exception& e) {
    throw Error(std::string("malformed report: ") + e.what());
  }
  return report;
}

EvalReport Evaluate(const std::vector<PredictionRecord>& records,
                    const NormalizationConfig& config) {
  return Score(records, config,
               [](const PredictionRecord& r) { return r.Final(); });
}

EvalReport EvaluateAt(const std::vector<PredictionRecord>& records,
                      double threshold, const NormalizationConfig& config) {
  return Score(records, config, [threshold](const PredictionRecord& r) {
    return r.FinalAt(threshold);
  });
}

bool IsFullyAbsent(std::string_view gold, const std::vector<std::string>& preds,
                   const NormalizationConfig& config) {
  const std::vector<std::string> tokens = WordTokens(gold, config);
  const std::set<std::string> wanted(tokens.begin(), tokens.end());
  for (const std::string& p : preds) {
    for (const std::string& t : WordTokens(p, config)) {
      if (wanted.count(t)) return false;
    }
  }
  return true;
}

AbsenceReport FullyAbsent(const std::vector<std::string>& golds,
                          const std::vector<std::string>& preds,
                          const NormalizationConfig& config) {
  AbsenceReport report;
  for (const std::string& g : golds) {
    ++report.n_gold;
    if (IsFullyAbsent(g, preds, config)) {
      ++report.n_fully_absent;
      report.absent.push_back(g);
    }
  }
  if (report.n_gold > 0) {
    report.ratio = static_cast<double>(report.n_fully_absent) / report.n_gold;
  }
  return report;
}

AbsenceReport FullyAbsent(const std::vector<PredictionRecord>& records,
                          const NormalizationConfig& config) {
  AbsenceReport total;
  for (const PredictionRecord& r : records) {
    if (!r.ok) continue;
    AbsenceReport one = FullyAbsent(Surfaces(r.gold), Surfaces(r.Final()), config);
    total.n_gold += one.n_gold;
    total.n_fully_absent += one.n_fully_absent;
    for (std::string& s : one.absent) total.absent.push_back(std::move(s));
  }
  if (total.n_gold > 0) {
    total.ratio = static_cast<double>(total.n_fully_absent) / total.n_gold;
  }
  return total;
}

PolarityReport PolarityBreakdown(const std::vector<PredictionRecord>& records,
                                 const NormalizationConfig& config) {
  if (!HasVerdicts(records)) {
    throw Error("run has no filter verdicts; polarity analysis needs mode f or edf");
  }
  PolarityReport report;
  for (const PredictionRecord& r : records) {
    if (!r.ok) continue;
    std::set<std::string> rejected;
    for (const Mention& m : r.mentions) {
      if (m.verdict && !m.verdict->accepted) {
        rejected.insert(Normalize(m.surface, config));
      }
    }
    for (const GoldEntity& g : r.gold) {
      if (!rejected.count(Normalize(g.surface, config))) continue;
      switch (g.polarity) {
        case Polarity::kPositive:
          ++report.positive;
          break;
        case Polarity::kNegative:
          ++report.negative;
          break;
        case Polarity::kUnspecified:
          ++report.unspecified;
          break;
      }
    }
  }
  return report;
}

std::vector<double> ParseGrid(std::string_view spec) {
  auto number = [&](std::string_view s) {
    const std::string t = Trim(s);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
      throw ConfigError("bad number '" + t + "' in grid '" + std::string(spec) +
                        "'");
    }
    return v;
  };
  std::vector<double> grid;
  if (spec.find(':') != std::string_view::npos) {
    const size_t a = spec.find(':');
    const size_t b = spec.find(':', a + 1);
    if (b == std::string_view::npos) {
      throw ConfigError("grid must be start:stop:step, got '" + std::string(spec) +
                        "'");
    }
    const double start = number(spec.substr(0, a));
    const double stop = number(spec.substr(a + 1, b - a - 1));
    const double step = number(spec.substr(b + 1));
    if (!(step > 0) || stop < start) {
      throw ConfigError("grid needs step > 0 and stop >= start");
    }
    const auto n = static_cast<int64_t>(std::floor((stop - start) / step + 1e-9));
    for (int64_t i = 0; i <= n; ++i) {
      // Snap accumulated error so 0:1:0.1 yields 0.3, not 0.30000000000000004.
      grid.push_back(std::round((start + i * step) * 1e12) / 1e12);
    }
    if (std::fabs(grid.back() - stop) < step * 1e-6) grid.back() = stop;
  } else {
    size_t start = 0;
    while (start <= spec.size()) {
      size_t comma = spec.find(',', start);
      if (comma == std::string_view::npos) comma = spec.size();
      grid.push_back(number(spec.substr(start, comma - start)));
      start = comma + 1;
    }
  }
  for (double tau : grid) {
    if (!(tau >= 0.0 && tau <= 1.0)) {
      throw ConfigError("grid value " + FormatDouble(tau) + " is outside [0, 1]");
    }
  }
  return grid;
}

std::vector<SweepRow> SweepThreshold(const std::vector<PredictionRecord>& records,
                                     const std::vector<double>& grid,
                                     const NormalizationConfig& config) {
  if (!HasVerdicts(records)) {
    throw Error("run has no filter verdicts to re-score");
  }
  std::vector<SweepRow> rows;
  for (double tau : grid) {
    SweepRow row;
    row.tau = tau;
    const EvalReport report = EvaluateAt(records, tau, config);
    row.counts = report.counts;
    row.metrics = report.metrics;
    for (const PredictionRecord& r : records) {
      if (r.ok) row.accepted += static_cast<int64_t>(r.FinalAt(tau).size());
    }
    rows.push_back(row);
  }
  return rows;
}

std::string FormatDouble(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

void WriteSweepCsv(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << "tau,precision,recall,f1\n";
  for (const SweepRow& row : rows) {
    out << FormatDouble(row.tau) << ',' << FormatDouble(row.metrics.precision)
        << ',' << FormatDouble(row.metrics.recall) << ','
        << FormatDouble(row.metrics.f1) << '\n';
  }
}

}  // namespace edf
