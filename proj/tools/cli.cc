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

#include "cli.h"

#include <atomic>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "config.h"
#include "edf/decomposer.h"
#include "edf/error.h"
#include "edf/eval.h"
#include "edf/http_client.h"
#include "edf/log.h"
#include "edf/normalize.h"
#include "edf/pipeline.h"
#include "edf/run_store.h"
#include "edf/synthetic.h"
#include "json.hpp"

namespace edf::cli {
namespace {

using nlohmann::json;

std::atomic<bool> g_interrupted{false};

extern "C" void OnSigint(int) { g_interrupted = true; }

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kFailure = 2;

void WriteText(const std::string& path, const std::string& text) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

std::vector<std::string> SplitCommas(const std::vector<std::string>& values) {
  std::vector<std::string> out;
  for (const std::string& v : values) {
    size_t start = 0;
    while (start <= v.size()) {
      size_t comma = v.find(',', start);
      if (comma == std::string::npos) comma = v.size();
      std::string item = Trim(std::string_view(v).substr(start, comma - start));
      if (!item.empty()) out.push_back(std::move(item));
      start = comma + 1;
    }
  }
  return out;
}

void PrintMetricsHeader(std::ostream& out) {
  out << std::left << std::setw(24) << "scope" << std::right << std::setw(8)
      << "tp" << std::setw(8) << "fp" << std::setw(8) << "fn"
      << "  precision,recall,f1\n";
}

void PrintMetricsRow(std::ostream& out, const std::string& scope,
                     const MatchCounts& c, const Prf& m) {
  out << std::left << std::setw(24) << scope << std::right << std::setw(8) << c.tp
      << std::setw(8) << c.fp << std::setw(8) << c.fn << "  "
      << FormatDouble(m.precision) << ',' << FormatDouble(m.recall) << ','
      << FormatDouble(m.f1) << '\n';
}

void PrintReport(std::ostream& out, const EvalReport& report) {
  PrintMetricsHeader(out);
  for (const EvalRow& row : report.per_type) {
    PrintMetricsRow(out, row.key, row.counts, row.metrics);
  }
  PrintMetricsRow(out, "all", report.counts, report.metrics);
  if (!report.failures.empty()) {
    out << report.failures.size() << " failed item(s)\n";
  }
}

struct Common {
  std::string config_path;
  ToolConfig Load() const {
    ToolConfig config = LoadToolConfig(config_path);
    ApplyEnvironment(&config);
    return config;
  }
};

// decompose ------------------------------------------------------------

struct DecomposeArgs {
  Common common;
  std::string target;
  std::string source = "annotation";
  std::string subtypes_file;
  std::string endpoint;
  std::string out;
  bool ensure_target = false;
};

int RunDecompose(const DecomposeArgs& a, std::ostream& out) {
  ToolConfig config = a.common.Load();
  const EntityTypeSpec target = EntityTypeSpec::Make(a.target);
  const DecomposerSource source = ParseDecomposerSource(a.source);
  const std::string endpoint =
      a.endpoint.empty() ? config.decomposer_endpoint : a.endpoint;
  std::optional<SubTypeSet> set;
  if (source == DecomposerSource::kCustom) {
    if (a.subtypes_file.empty()) {
      throw ConfigError("--subtypes-file is required for --source custom");
    }
    set = LoadCustomSubtypes(a.subtypes_file, target.name);
  } else if (source == DecomposerSource::kLlmGenerated && !endpoint.empty()) {
    BackendDescriptor d = BackendDescriptor::NerDefaults(BackendKind::kSingleType);
    d.endpoint = endpoint;
    d.timeout = config.ner.descriptor.timeout;
    HttpCompletionClient client(d);
    set = DecomposeLlm(target, client, d.decoding);
  } else {
    set = Decompose(target, source);
  }
  if (a.ensure_target) set = EnsureTargetIncluded(*set);
  std::string text;
  for (const std::string& s : set->subtypes()) text += s + "\n";
  out << text;
  if (!a.out.empty()) WriteText(a.out, text);
  return kOk;
}

// extract --------------------------------------------------------------

struct ExtractArgs {
  Common common;
  std::string corpus;
  std::vector<std::string> subtypes;
  std::string endpoint;
  std::string out;
  bool multi = false;
};

int RunExtract(const ExtractArgs& a, std::ostream& out, std::ostream& err) {
  ToolConfig config = a.common.Load();
  if (!a.endpoint.empty()) config.ner.descriptor.endpoint = a.endpoint;
  if (a.multi) {
    config.ner.multi = true;
    if (config.ner.descriptor.kind == BackendKind::kSingleType) {
      config.ner.descriptor.kind = BackendKind::kMultiType;
    }
  }
  const Corpus corpus = LoadCorpus(a.corpus);
  Backends backends(config, &corpus, false);
  std::vector<std::string> subtypes = SplitCommas(a.subtypes);
  if (subtypes.empty()) {
    for (const EntityTypeSpec& t : corpus.catalog) subtypes.push_back(t.name);
  }
  if (subtypes.empty()) throw ConfigError("no sub-types to extract (--subtype)");
  NerBackend& ner = backends.ner();
  std::string jsonl;
  int failures = 0;
  for (const Document& doc : corpus.documents) {
    std::map<std::string, std::vector<std::string>> found;
    try {
      if (ner.multi_type()) {
        found = ner.ExtractMulti(
            doc, SubTypeSet(subtypes.front(), DecomposerSource::kCustom, subtypes));
      } else {
        for (const std::string& s : subtypes) found[s] = ner.ExtractSingle(doc, s);
      }
    } catch (const Error& e) {
      ++failures;
      err << "document " << doc.id() << " failed: " << e.what() << '\n';
      jsonl += json{{"doc_id", doc.id()}, {"status", "failed"}, {"error", e.what()}}
                   .dump() + "\n";
      continue;
    }
    for (const std::string& s : subtypes) {
      const std::vector<std::string>& surfaces = found[s];
      std::string joined;
      for (const std::string& surface : surfaces) {
        if (!joined.empty()) joined += "; ";
        joined += surface;
      }
      out << doc.id() << '\t' << s << '\t' << joined << '\n';
      jsonl += json{{"doc_id", doc.id()},
                    {"subtype", s},
                    {"status", "ok"},
                    {"surfaces", surfaces}}
                   .dump() + "\n";
    }
  }
  if (!a.out.empty()) WriteText(a.out, jsonl);
  return failures > 0 ? kFailure : kOk;
}

// run ------------------------------------------------------------------

struct RunArgs {
  Common common;
  std::string corpus;
  std::string out;
  std::string mode;
  std::vector<std::string> targets;
  std::string source;
  std::string subtypes_file;
  std::string context;
  std::string prompt;
  std::string endpoint;
  std::string filter_endpoint;
  double threshold = 0.0;
  int concurrency = 1;
  bool no_resume = false;
  CLI::Option* threshold_opt = nullptr;
  CLI::Option* concurrency_opt = nullptr;
};

int RunRun(const RunArgs& a, std::ostream& out, std::ostream& err) {
  ToolConfig config = a.common.Load();
  RunConfig& run = config.run;
  if (!a.mode.empty()) run.mode = ParseRunMode(a.mode);
  if (!a.targets.empty()) run.targets = SplitCommas(a.targets);
  if (!a.source.empty()) run.source = ParseDecomposerSource(a.source);
  if (!a.subtypes_file.empty()) {
    if (run.targets.size() != 1) {
      throw ConfigError("--subtypes-file needs exactly one --targets entry");
    }
    config.subtype_files[run.targets.front()] = a.subtypes_file;
  }
  if (!a.context.empty()) run.filter.context_mode = ParseContextMode(a.context);
  if (!a.prompt.empty()) run.filter.prompt_variant = ParsePromptVariant(a.prompt);
  if (a.threshold_opt->count() > 0) run.filter.threshold = a.threshold;
  if (a.concurrency_opt->count() > 0) run.concurrency = a.concurrency;
  if (a.no_resume) run.resume = false;
  if (!a.endpoint.empty()) config.ner.descriptor.endpoint = a.endpoint;
  if (!a.filter_endpoint.empty()) config.filter.descriptor.endpoint = a.filter_endpoint;
  run.run_dir = a.out;
  ResolveSubtypeFiles(&config);
  run.Validate();

  const Corpus corpus = LoadCorpus(a.corpus);
  Backends backends(config, &corpus, UsesFilter(run.mode));
  run.backends_json = BackendsJson(config);

  g_interrupted = false;
  auto previous = std::signal(SIGINT, OnSigint);
  RunHooks hooks;
  hooks.should_stop = [] { return g_interrupted.load(); };
  RunResult result;
  try {
    result = RunCorpus(corpus, run, backends.ner(), backends.filter(), hooks);
  } catch (...) {
    std::signal(SIGINT, previous);
    throw;
  }
  std::signal(SIGINT, previous);

  out << "mode " << ToString(run.mode) << ", " << corpus.documents.size()
      << " documents, " << result.records.size() << " items";
  if (result.resumed > 0) out << " (" << result.resumed << " resumed)";
  out << '\n';
  if (result.interrupted) {
    err << "interrupted; rerun the same command to resume from " << a.out << '\n';
    return kFailure;
  }
  PrintReport(out, result.report);
  for (const EvalFailure& f : result.report.failures) {
    err << "failed: " << f.doc_id << " (" << f.entity_type << "): " << f.error << '\n';
  }
  return result.report.failures.empty() ? kOk : kFailure;
}

// evaluate / analyses / sweep --------------------------------------------

struct RunDirArgs {
  std::string run;
  std::string out;
  double threshold = 0.0;
  CLI::Option* threshold_opt = nullptr;
  std::string grid;
};

int RunEvaluate(const RunDirArgs& a, std::ostream& out) {
  const RunArtifacts run = LoadRun(a.run);
  const EvalReport report =
      a.threshold_opt->count() > 0
          ? EvaluateAt(run.predictions, a.threshold, run.normalization())
          : Evaluate(run.predictions, run.normalization());
  PrintReport(out, report);
  if (!a.out.empty()) WriteText(a.out, report.ToJson());
  return kOk;
}

int RunAnalyzeAbsent(const RunDirArgs& a, std::ostream& out) {
  const RunArtifacts run = LoadRun(a.run);
  const AbsenceReport report = FullyAbsent(run.predictions, run.normalization());
  out << "gold " << report.n_gold << ", fully absent " << report.n_fully_absent
      << ", ratio " << FormatDouble(report.ratio) << '\n';
  for (const std::string& s : report.absent) out << "  " << s << '\n';
  if (!a.out.empty()) {
    const json j = {{"n_gold", report.n_gold},
                    {"n_fully_absent", report.n_fully_absent},
                    {"ratio", report.ratio},
                    {"absent", report.absent}};
    WriteText(a.out, j.dump(2) + "\n");
  }
  return kOk;
}

int RunAnalyzePolarity(const RunDirArgs& a, std::ostream& out) {
  const RunArtifacts run = LoadRun(a.run);
  const PolarityReport report = PolarityBreakdown(run.predictions, run.normalization());
  out << "rejected gold by polarity\n"
      << "  positive     " << report.positive << '\n'
      << "  negative     " << report.negative << '\n'
      << "  unspecified  " << report.unspecified << '\n'
      << "  total        " << report.total() << '\n';
  if (!a.out.empty()) {
    const json j = {{"positive", report.positive},
                    {"negative", report.negative},
                    {"unspecified", report.unspecified},
                    {"total", report.total()}};
    WriteText(a.out, j.dump(2) + "\n");
  }
  return kOk;
}

int RunSweep(const RunDirArgs& a, std::ostream& out) {
  const std::vector<double> grid = ParseGrid(a.grid);
  const RunArtifacts run = LoadRun(a.run);
  const std::vector<SweepRow> rows =
      SweepThreshold(run.predictions, grid, run.normalization());
  std::ostringstream csv;
  WriteSweepCsv(rows, csv);
  out << csv.str();
  const std::string path =
      a.out.empty() ? (std::filesystem::path(a.run) / "sweep.csv").string() : a.out;
  WriteText(path, csv.str());
  return kOk;
}

// gen-synthetic ------------------------------------------------------------

struct SyntheticArgs {
  uint64_t seed = 7;
  int n_docs = 100;
  std::string gazetteer;
  std::string out;
  SyntheticOptions options;
};

int RunGenSynthetic(const SyntheticArgs& a, std::ostream& out) {
  const Gazetteer gazetteer =
      a.gazetteer.empty() ? Gazetteer::Builtin() : Gazetteer::Load(a.gazetteer);
  const Corpus corpus = GenerateSynthetic(a.seed, a.n_docs, gazetteer, a.options);
  WriteJsonl(corpus, a.out);
  size_t n_gold = 0;
  for (const auto& [id, golds] : corpus.gold) n_gold += golds.size();
  out << "wrote " << corpus.documents.size() << " documents, " << n_gold
      << " gold entities to " << a.out << '\n';
  return kOk;
}

}  // namespace

int Main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entity decomposition with filtering for zero-shot clinical NER",
               "edf"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  DecomposeArgs dec;
  CLI::App* decompose = app.add_subcommand("decompose", "Print the sub-types of an entity type");
  decompose->add_option("--target", dec.target, "Target entity type")->required();
  decompose->add_option("--source", dec.source,
                        "annotation, llm-generated, umls or custom")
      ->capture_default_str();
  decompose->add_option("--subtypes-file", dec.subtypes_file,
                        "Sub-type list, one per line (custom source)");
  decompose->add_option("--endpoint", dec.endpoint,
                        "Completions endpoint for a live llm-generated list");
  decompose->add_flag("--ensure-target", dec.ensure_target,
                      "Append the target when missing");
  decompose->add_option("--config", dec.common.config_path, "TOML config");
  decompose->add_option("--out", dec.out, "Also write the list here");

  ExtractArgs ext;
  CLI::App* extract = app.add_subcommand("extract", "Run the NER backend over a corpus");
  extract->add_option("--corpus", ext.corpus, "Corpus (JSONL or BIO)")->required();
  extract->add_option("--subtype", ext.subtypes,
                      "Sub-type(s) to query; defaults to the corpus types");
  extract->add_flag("--multi", ext.multi, "Query all sub-types in one call");
  extract->add_option("--endpoint", ext.endpoint, "NER completions endpoint");
  extract->add_option("--config", ext.common.config_path, "TOML config");
  extract->add_option("--out", ext.out, "JSONL output file");

  RunArgs runa;
  CLI::App* run = app.add_subcommand("run", "Run the pipeline over a corpus");
  run->add_option("--mode", runa.mode, "baseline, ed, f or edf");
  run->add_option("--corpus", runa.corpus, "Corpus (JSONL or BIO)")->required();
  run->add_option("--config", runa.common.config_path, "TOML config");
  run->add_option("--out", runa.out, "Run directory")->required();
  run->add_option("--targets", runa.targets, "Target entity types");
  run->add_option("--source", runa.source, "Decomposer source");
  run->add_option("--subtypes-file", runa.subtypes_file,
                  "Custom sub-type list for the single target");
  run->add_option("--filter-context", runa.context,
                  "none, sentence, paragraph or document");
  run->add_option("--filter-prompt", runa.prompt, "default or described");
  runa.threshold_opt =
      run->add_option("--threshold", runa.threshold, "Filter threshold in [0, 1]");
  runa.concurrency_opt =
      run->add_option("--concurrency", runa.concurrency, "Parallel documents");
  run->add_option("--endpoint", runa.endpoint, "NER completions endpoint");
  run->add_option("--filter-endpoint", runa.filter_endpoint,
                  "Filter completions endpoint");
  run->add_flag("--no-resume", runa.no_resume, "Discard earlier results in --out");

  RunDirArgs eva;
  CLI::App* evaluate = app.add_subcommand("evaluate", "Score a run directory");
  evaluate->add_option("--run", eva.run, "Run directory")->required();
  eva.threshold_opt =
      evaluate->add_option("--threshold", eva.threshold, "Re-score at this threshold");
  evaluate->add_option("--out", eva.out, "Report JSON file");

  RunDirArgs abs;
  CLI::App* absent = app.add_subcommand("analyze-absent",
                                        "Count gold entities fully absent from predictions");
  absent->add_option("--run", abs.run, "Run directory")->required();
  absent->add_option("--out", abs.out, "JSON output file");

  RunDirArgs pol;
  CLI::App* polarity = app.add_subcommand("analyze-polarity",
                                          "Break rejected gold entities down by polarity");
  polarity->add_option("--run", pol.run, "Run directory")->required();
  polarity->add_option("--out", pol.out, "JSON output file");

  RunDirArgs swp;
  CLI::App* sweep = app.add_subcommand("sweep", "Re-score stored verdicts over thresholds");
  sweep->add_option("--run", swp.run, "Run directory")->required();
  sweep->add_option("--grid", swp.grid, "start:stop:step or a comma list")->required();
  sweep->add_option("--out", swp.out, "CSV file (default RUN/sweep.csv)");

  SyntheticArgs syn;
  CLI::App* synthetic = app.add_subcommand("gen-synthetic", "Write a synthetic corpus");
  synthetic->add_option("--seed", syn.seed, "Random seed")->capture_default_str();
  synthetic->add_option("--n-docs", syn.n_docs, "Number of documents")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  synthetic->add_option("--gazetteer", syn.gazetteer, "Gazetteer JSON");
  synthetic->add_option("--negation-rate", syn.options.negation_rate,
                        "Share of negated mentions")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  synthetic->add_option("--out", syn.out, "Corpus JSONL file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (decompose->parsed()) return RunDecompose(dec, out);
    if (extract->parsed()) return RunExtract(ext, out, err);
    if (run->parsed()) return RunRun(runa, out, err);
    if (evaluate->parsed()) return RunEvaluate(eva, out);
    if (absent->parsed()) return RunAnalyzeAbsent(abs, out);
    if (polarity->parsed()) return RunAnalyzePolarity(pol, out);
    if (sweep->parsed()) return RunSweep(swp, out);
    if (synthetic->parsed()) return RunGenSynthetic(syn, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}

}  // namespace edf::cli
