// Copyright 2026 The Treeconv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "treeconv/pipeline.h"

#include <filesystem>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "treeconv/conllu.h"
#include "treeconv/convert.h"
#include "treeconv/embed_store.h"
#include "treeconv/errors.h"
#include "treeconv/evalx.h"
#include "treeconv/mismatch.h"
#include "treeconv/pair_index.h"
#include "treeconv/sampler.h"

namespace treeconv {
namespace {

namespace fs = std::filesystem;

struct CommonOptions {
  bool lowercase = false;
  bool lenient = false;
};

struct DetectOptions {
  std::string base;
  std::string augment;
  std::string out;
  bool dump_index = false;
};

struct ConvertOptions {
  std::string base;
  std::string augment;
  std::string out;
  std::string strategy = "lexical";
  std::string vectors;
  std::size_t k = kDefaultNeighbors;
  std::string on_no_replacement = "keep";
  bool dry_run = false;
  std::string detect_augment;
  std::string from_report;
};

struct SampleOptions {
  std::string base;
  std::string augment;
  std::string out;
  std::vector<std::size_t> tiers = kDefaultTiers;
  std::vector<std::uint64_t> seeds = kDefaultSeeds;
};

struct EvalOptions {
  std::string gold;
  std::string pred;
  std::string out;
  bool exclude_punct = false;
};

struct ReportOptions {
  std::string gold;
  std::string unconverted;
  std::string converted;
  std::string out;
  std::int64_t threshold = kDefaultConfusionThreshold;
  double alpha = 0.05;
  std::size_t resamples = 10000;
  std::uint64_t seed = 1;
  std::string metric = "LAS";
  bool exclude_punct = false;
};

// Outputs are staged in memory and written only after all work succeeded.
class RunOutput {
 public:
  RunOutput(std::string dir, std::string command, std::string config)
      : dir_(std::move(dir)), command_(std::move(command)), config_(std::move(config)) {}

  void AddInput(const std::string& path) { inputs_.push_back(path); }
  void Add(const std::string& name, std::string contents) {
    files_.emplace_back(name, std::move(contents));
  }

  void Commit() {
    fs::create_directories(dir_);
    for (const auto& [name, contents] : files_) {
      const fs::path target = fs::path(dir_) / name;
      for (const std::string& input : inputs_) {
        std::error_code ec;
        if (fs::exists(target) && fs::equivalent(target, input, ec)) {
          throw Error("refusing to overwrite input '" + input + "'");
        }
      }
    }
    nlohmann::ordered_json manifest;
    manifest["tool"] = "treeconv";
    manifest["version"] = kVersion;
    manifest["command"] = command_;
    manifest["config"] = config_;
    nlohmann::ordered_json inputs = nlohmann::ordered_json::array();
    for (const std::string& input : inputs_) {
      inputs.push_back({{"path", input}, {"fnv1a64", Fnv1a64Hex(ReadFile(input))}});
    }
    manifest["inputs"] = std::move(inputs);
    nlohmann::ordered_json outputs = nlohmann::ordered_json::array();
    for (const auto& [name, contents] : files_) {
      WriteFile((fs::path(dir_) / name).string(), contents);
      outputs.push_back({{"path", name}, {"fnv1a64", Fnv1a64Hex(contents)}});
    }
    manifest["outputs"] = std::move(outputs);
    WriteFile((fs::path(dir_) / "run.config").string(), config_);
    WriteFile((fs::path(dir_) / "run_manifest.json").string(), manifest.dump(2) + "\n");
  }

 private:
  std::string dir_;
  std::string command_;
  std::string config_;
  std::vector<std::string> inputs_;
  std::vector<std::pair<std::string, std::string>> files_;
};

Corpus LoadCorpus(const std::string& path, const CommonOptions& common,
                  std::ostream& err) {
  std::vector<std::string> warnings;
  Corpus corpus = ReadCorpusFile(path, ParseOptions{!common.lenient}, &warnings);
  for (const std::string& w : warnings) err << "warning: " << path << ": " << w << "\n";
  return corpus;
}

int RunDetect(const DetectOptions& o, const CommonOptions& common, RunOutput& run,
              std::ostream& out, std::ostream& err) {
  const NormalizationPolicy policy{common.lowercase};
  const PairIndex base = BuildIndex(LoadCorpus(o.base, common, err), policy);
  const PairIndex augment = BuildIndex(LoadCorpus(o.augment, common, err), policy);
  const MismatchSet mismatches = Detect(base, augment);
  run.AddInput(o.base);
  run.AddInput(o.augment);
  run.Add("mismatches.tsv", MismatchesToTsv(mismatches));
  run.Add("mismatches.json", MismatchesToJson(mismatches));
  if (o.dump_index) {
    run.Add("base_index.tsv", DumpIndex(base));
    run.Add("augment_index.tsv", DumpIndex(augment));
  }
  run.Commit();
  const MismatchSummary summary = Summarize(mismatches);
  out << "mismatches: " << summary.items << " items over " << summary.pairs
      << " pairs, " << summary.arcs << " arcs\n";
  return kExitOk;
}

int RunConvert(const ConvertOptions& o, const CommonOptions& common, RunOutput& run,
               std::ostream& out, std::ostream& err) {
  ConverterConfig config;
  config.strategy = ParseStrategy(o.strategy);
  config.k = o.k;
  config.policy = NormalizationPolicy{common.lowercase};
  config.on_no_replacement = o.on_no_replacement == "drop" ? NoReplacement::kDropSentence
                                                           : NoReplacement::kKeepOriginal;
  if (IsEmbeddingStrategy(config.strategy) && o.vectors.empty() && o.from_report.empty()) {
    throw MissingVectors();
  }
  const Corpus augment = LoadCorpus(o.augment, common, err);
  run.AddInput(o.augment);

  ConversionReport report;
  if (!o.from_report.empty()) {
    report = ReportFromJson(ReadFile(o.from_report));
    run.AddInput(o.from_report);
  } else {
    const PairIndex base = BuildIndex(LoadCorpus(o.base, common, err), config.policy);
    run.AddInput(o.base);
    const Corpus* detect_source = &augment;
    Corpus detect_corpus;
    if (!o.detect_augment.empty()) {
      detect_corpus = LoadCorpus(o.detect_augment, common, err);
      detect_source = &detect_corpus;
      run.AddInput(o.detect_augment);
    }
    const MismatchSet mismatches = Detect(base, BuildIndex(*detect_source, config.policy));
    if (IsEmbeddingStrategy(config.strategy)) {
      const VectorStore store = VectorStore::LoadFile(o.vectors, config.policy);
      for (const std::string& w : store.warnings()) {
        err << "warning: " << o.vectors << ": " << w << "\n";
      }
      run.AddInput(o.vectors);
      report = PlanEmbedding(augment, base, mismatches, store, config);
    } else {
      report = PlanLexical(augment, base, mismatches, config);
    }
  }
  // Applying also validates a stored plan against the corpus.
  const Corpus converted = ApplyPlan(augment, report);
  if (!o.dry_run) run.Add("converted.conllu", SerializeCorpus(converted));
  run.Add("conversion_report.json", ReportToJson(report));
  run.Add("conversion_summary.tsv", ReportToTsv(report));
  run.Commit();
  out << "converted " << report.applied.size() << " arcs, skipped " << report.skipped.size()
      << (o.dry_run ? " (dry run)" : "") << "\n";
  return kExitOk;
}

int RunSample(const SampleOptions& o, const CommonOptions& common, RunOutput& run,
              std::ostream& out, std::ostream& err) {
  const Corpus base = LoadCorpus(o.base, common, err);
  const Corpus augment = LoadCorpus(o.augment, common, err);
  run.AddInput(o.base);
  run.AddInput(o.augment);
  std::size_t files = 0;
  for (std::size_t tier : o.tiers) {
    for (std::uint64_t seed : o.seeds) {
      const SampleResult result = Sample({tier, &base, &augment, seed});
      const std::string stem = SampleStem(tier, seed);
      run.Add(stem + ".conllu", SerializeCorpus(result.corpus));
      run.Add(stem + ".manifest.json", ManifestToJson(result.manifest));
      ++files;
    }
  }
  run.Commit();
  out << "wrote " << files << " samples\n";
  return kExitOk;
}

int RunEval(const EvalOptions& o, const CommonOptions& common, const std::string& config,
            std::ostream& out, std::ostream& err) {
  const Corpus gold = LoadCorpus(o.gold, common, err);
  const Corpus pred = LoadCorpus(o.pred, common, err);
  const ScoreResult score = Score(gold, pred, ScoreOptions{o.exclude_punct});
  if (!o.out.empty()) {
    RunOutput run(o.out, "eval", config);
    run.AddInput(o.gold);
    run.AddInput(o.pred);
    run.Add("score.json", ScoreToJson(score));
    run.Commit();
  }
  out << ScoreLine(score) << "\n";
  return kExitOk;
}

int RunReport(const ReportOptions& o, const CommonOptions& common, RunOutput& run,
              std::ostream& out, std::ostream& err) {
  const Corpus gold = LoadCorpus(o.gold, common, err);
  const Corpus unconverted = LoadCorpus(o.unconverted, common, err);
  const Corpus converted = LoadCorpus(o.converted, common, err);
  run.AddInput(o.gold);
  run.AddInput(o.unconverted);
  run.AddInput(o.converted);
  const PredictionAnalysis analysis =
      AnalyzePredictions(gold, unconverted, converted, o.threshold);
  SignificanceConfig config;
  config.alpha = o.alpha;
  config.resamples = o.resamples;
  config.seed = o.seed;
  config.metric = o.metric == "UAS" ? Metric::kUas : Metric::kLas;
  config.exclude_punct = o.exclude_punct;
  // a = converted, b = unconverted.
  const SignificanceResult significance =
      CompareSignificance(gold, converted, unconverted, config);
  run.Add("confusion_unconverted.tsv", ConfusionToTsv(analysis.unconverted));
  run.Add("confusion_converted.tsv", ConfusionToTsv(analysis.converted));
  run.Add("significance.json", SignificanceToJson(significance, config));
  run.Commit();
  out << (config.metric == Metric::kLas ? "LAS" : "UAS") << " converted "
      << significance.metric_a << " vs unconverted " << significance.metric_b
      << ", p=" << significance.p_value << " (" << kSignificanceMethod << ")\n";
  return kExitOk;
}

// Settings of the invoked subcommand in a form --config accepts back.
// Unset optional paths are omitted since an empty path fails validation.
std::string ActiveConfig(const CLI::App& app) {
  std::string prefix;
  for (const CLI::App* sub : app.get_subcommands()) prefix = sub->get_name() + ".";
  std::istringstream all(app.config_to_str(true, false));
  std::string kept;
  for (std::string line; std::getline(all, line);) {
    if (!line.starts_with(prefix) || line.ends_with("=\"\"")) continue;
    kept += line + '\n';
  }
  return kept;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Detects and converts dependency annotation differences between treebanks",
               "treeconv"};
  app.set_version_flag("--version", std::string(kVersion));
  app.set_config("--config", "", "Flat key=value configuration file");
  app.require_subcommand(1);

  CommonOptions common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_flag("--lowercase", common.lowercase, "Lowercase word forms before matching");
    sub->add_flag("--lenient", common.lenient,
                  "Downgrade multi-root, cyclic and blank-line problems to warnings");
  };

  DetectOptions detect;
  CLI::App* detect_cmd = app.add_subcommand("detect", "List annotation differences");
  detect_cmd->add_option("--base", detect.base, "Base corpus (CoNLL-U)")
      ->required()->check(CLI::ExistingFile);
  detect_cmd->add_option("--augment", detect.augment, "Augment corpus (CoNLL-U)")
      ->required()->check(CLI::ExistingFile);
  detect_cmd->add_option("--out", detect.out, "Output directory")->required();
  detect_cmd->add_flag("--dump-index", detect.dump_index, "Also write both pair indexes");
  add_common(detect_cmd);

  ConvertOptions convert;
  CLI::App* convert_cmd = app.add_subcommand("convert", "Relabel augment-corpus arcs");
  convert_cmd->add_option("--base", convert.base, "Base corpus (CoNLL-U)")
      ->check(CLI::ExistingFile);
  convert_cmd->add_option("--augment", convert.augment, "Augment corpus (CoNLL-U)")
      ->required()->check(CLI::ExistingFile);
  convert_cmd->add_option("--out", convert.out, "Output directory")->required();
  convert_cmd->add_option("--strategy", convert.strategy, "Replacement strategy")
      ->check(CLI::IsMember({"lexical", "static-embedding", "contextual-embedding"}))
      ->capture_default_str();
  convert_cmd->add_option("--vectors", convert.vectors, "Vector file for embedding strategies")
      ->check(CLI::ExistingFile);
  convert_cmd->add_option("--k", convert.k, "Neighbors per word")
      ->check(CLI::PositiveNumber)->capture_default_str();
  convert_cmd->add_option("--on-no-replacement", convert.on_no_replacement,
                          "Arcs without base evidence: keep the sentence or drop it")
      ->check(CLI::IsMember({"keep", "drop"}))->capture_default_str();
  convert_cmd->add_flag("--dry-run", convert.dry_run, "Write the report only");
  convert_cmd->add_option("--detect-augment", convert.detect_augment,
                          "Compute differences from this corpus instead of --augment")
      ->check(CLI::ExistingFile);
  convert_cmd->add_option("--from-report", convert.from_report,
                          "Apply a stored conversion_report.json instead of planning")
      ->check(CLI::ExistingFile);
  add_common(convert_cmd);

  SampleOptions sample;
  CLI::App* sample_cmd = app.add_subcommand("sample", "Draw half-and-half training sets");
  sample_cmd->add_option("--base", sample.base, "Base training partition")
      ->required()->check(CLI::ExistingFile);
  sample_cmd->add_option("--augment", sample.augment, "Augment training partition")
      ->required()->check(CLI::ExistingFile);
  sample_cmd->add_option("--out", sample.out, "Output directory")->required();
  sample_cmd->add_option("--tiers", sample.tiers, "Sentence totals")
      ->delimiter(',')->capture_default_str();
  sample_cmd->add_option("--seeds", sample.seeds, "Seeds, one sample per seed and tier")
      ->delimiter(',')->capture_default_str();
  add_common(sample_cmd);

  EvalOptions eval;
  CLI::App* eval_cmd = app.add_subcommand("eval", "Score predictions against gold");
  eval_cmd->add_option("--gold", eval.gold, "Gold corpus")
      ->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--pred", eval.pred, "Predicted corpus")
      ->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--out", eval.out, "Optional output directory for score.json");
  eval_cmd->add_flag("--exclude-punct", eval.exclude_punct,
                     "Skip tokens whose gold relation is punct");
  add_common(eval_cmd);

  ReportOptions report;
  CLI::App* report_cmd =
      app.add_subcommand("report", "Error tables and significance for two systems");
  report_cmd->add_option("--gold", report.gold, "Gold corpus")
      ->required()->check(CLI::ExistingFile);
  report_cmd->add_option("--unconverted", report.unconverted,
                         "Predictions of the unconverted model")
      ->required()->check(CLI::ExistingFile);
  report_cmd->add_option("--converted", report.converted,
                         "Predictions of the converted model")
      ->required()->check(CLI::ExistingFile);
  report_cmd->add_option("--out", report.out, "Output directory")->required();
  report_cmd->add_option("--threshold", report.threshold,
                         "Report gold relations wrong more than this many times")
      ->capture_default_str();
  report_cmd->add_option("--alpha", report.alpha, "Significance level")
      ->check(CLI::Range(0.0, 1.0))->capture_default_str();
  report_cmd->add_option("--resamples", report.resamples, "Bootstrap resamples")
      ->check(CLI::PositiveNumber)->capture_default_str();
  report_cmd->add_option("--seed", report.seed, "Bootstrap seed")->capture_default_str();
  report_cmd->add_option("--metric", report.metric, "Metric compared")
      ->check(CLI::IsMember({"LAS", "UAS"}))->capture_default_str();
  report_cmd->add_flag("--exclude-punct", report.exclude_punct,
                       "Skip tokens whose gold relation is punct");
  add_common(report_cmd);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  try {
    const std::string config = ActiveConfig(app);
    if (detect_cmd->parsed()) {
      RunOutput run(detect.out, "detect", config);
      return RunDetect(detect, common, run, out, err);
    }
    if (convert_cmd->parsed()) {
      if (convert.base.empty() && convert.from_report.empty()) {
        throw Error("convert needs --base unless --from-report is given");
      }
      RunOutput run(convert.out, "convert", config);
      return RunConvert(convert, common, run, out, err);
    }
    if (sample_cmd->parsed()) {
      RunOutput run(sample.out, "sample", config);
      return RunSample(sample, common, run, out, err);
    }
    if (eval_cmd->parsed()) return RunEval(eval, common, config, out, err);
    if (report_cmd->parsed()) {
      RunOutput run(report.out, "report", config);
      return RunReport(report, common, run, out, err);
    }
  } catch (const AlignmentError& e) {
    err << "error: " << e.what() << "\n";
    return kExitAlignmentError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace treeconv
