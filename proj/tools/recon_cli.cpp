// Copyright 2026 The Recon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// recon: command-line front end.
//
//   recon train        --data D.csv --label y --kind tree|rulelist --max-depth K --out M.json
//   recon audit        --model M.json --out R.json [--original D.csv] [--legacy-dist]
//   recon oracle-check --model M.json [--report R.json] [--oracle-ceiling N]
//   recon experiment   --data D.csv --label y --grid G.json --out-dir DIR [--workers W]
//
// Exit codes: 0 success, 1 verification or audit failure, 2 usage error.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "recon/recon.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct TrainOptions {
  std::string data;
  std::string label;
  std::string kind = "tree";
  int max_depth = 3;
  double min_support = 0.05;
  std::uint64_t seed = 0;
  double train_fraction = 1.0;
  int quantiles = 4;
  bool binarize = false;
  std::string schema;
  std::string out;
};

struct AuditOptions {
  std::string model;
  std::string out;
  std::string csv;
  std::string original;
  std::string binarization;
  bool legacy_dist = false;
};

struct OracleOptions {
  std::string model;
  std::string report;
  std::uint64_t ceiling = std::uint64_t{1} << 22;
};

struct ExperimentOptions {
  std::string data;
  std::string label;
  std::string grid;
  std::string out_dir;
  unsigned workers = 1;
  int quantiles = 4;
};

std::string BinarizationPathFor(const std::string& model_path) {
  return model_path + ".binarization.json";
}

int RunTrain(const TrainOptions& opt) {
  const auto table = recon::LoadCsv(opt.data, opt.label);
  const bool rulelist = opt.kind == "rulelist";
  std::optional<recon::BinarizationSpec> spec;
  recon::DeterministicDataset data;
  if (rulelist || opt.binarize) {
    auto bin = recon::Binarize(table, opt.quantiles);
    for (const auto& w : bin.warnings) std::cerr << "warning: " << w << "\n";
    data = std::move(bin.data);
    spec = std::move(bin.spec);
  } else if (!opt.schema.empty()) {
    const auto schema = recon::SchemaFromJson(recon::Json::parse(recon::ReadFile(opt.schema)));
    data = recon::EncodeIntegerTable(table, &schema);
  } else {
    data = recon::EncodeIntegerTable(table);
  }

  recon::DeterministicDataset train = data;
  std::optional<recon::DeterministicDataset> test;
  if (opt.train_fraction < 1.0) {
    auto parts = recon::Split(data, opt.train_fraction, opt.seed);
    train = std::move(parts.first);
    test = std::move(parts.second);
  }
  const recon::LearnerConfig cfg{opt.max_depth, opt.min_support, opt.seed};
  recon::Model model = rulelist ? recon::Model(recon::TrainGreedyRuleList(train, cfg))
                                : recon::Model(recon::TrainGreedyTree(train, cfg));
  recon::WriteFileAtomic(opt.out, recon::SerializeModel(model));
  if (spec) {
    recon::WriteFileAtomic(BinarizationPathFor(opt.out),
                           recon::BinarizationSpecToJson(*spec).dump(2) + "\n");
  }
  std::cout << "model_kind=" << opt.kind << "\n"
            << "model_size=" << std::visit([](const auto& m) { return m.size(); }, model) << "\n"
            << "train_accuracy=" << recon::FormatDouble(recon::Accuracy(model, train)) << "\n";
  if (test) {
    std::cout << "test_accuracy=" << recon::FormatDouble(recon::Accuracy(model, *test)) << "\n";
  }
  return kExitOk;
}

recon::DeterministicDataset LoadOriginal(const AuditOptions& opt,
                                         const recon::DatasetSchema& schema) {
  const auto table = recon::LoadCsv(opt.original, schema.label().name());
  std::string spec_path = opt.binarization;
  if (spec_path.empty() && std::filesystem::exists(BinarizationPathFor(opt.model))) {
    spec_path = BinarizationPathFor(opt.model);
  }
  if (!spec_path.empty()) {
    const auto spec =
        recon::BinarizationSpecFromJson(recon::Json::parse(recon::ReadFile(spec_path)));
    auto data = recon::ApplyBinarization(table, spec);
    if (!(data.schema() == schema)) {
      throw recon::Error(recon::ErrorCode::kSchemaMismatch,
                         "binarized original does not match the model schema");
    }
    return data;
  }
  return recon::EncodeIntegerTable(table, &schema);
}

int RunAudit(const AuditOptions& opt) {
  const recon::Model model = recon::LoadModel(opt.model);
  const auto knowledge = recon::Reconstruct(model);
  if (opt.legacy_dist && knowledge.kind != recon::ModelKind::kTree) {
    throw recon::Error(recon::ErrorCode::kUndefinedForRuleLists,
                       "--legacy-dist is only defined for decision trees");
  }
  recon::AuditReport report = recon::DistG(knowledge);
  if (!opt.legacy_dist) report.dist_legacy.reset();
  if (!opt.original.empty()) {
    const auto original = LoadOriginal(opt, knowledge.schema);
    report.alignment_cost = recon::AlignToOriginal(knowledge, original).total_cost;
  }
  recon::WriteFileAtomic(opt.out, recon::SerializeReport(report));
  std::string csv = opt.csv;
  if (csv.empty()) csv = std::filesystem::path(opt.out).replace_extension(".csv").string();
  recon::WriteFileAtomic(csv, recon::ReportToCsv(report));

  std::cout << "dist_g=" << recon::FormatDouble(report.dist_g) << "\n";
  if (report.dist_legacy) {
    std::cout << "dist_legacy=" << recon::FormatDouble(*report.dist_legacy) << "\n";
  }
  if (report.alignment_cost) {
    std::cout << "alignment_cost=" << recon::FormatDouble(*report.alignment_cost) << "\n";
  }
  for (const auto& g : report.per_group) {
    std::cout << "path " << g.path_index << ": support=" << g.multiplicity
              << " worlds=" << g.worlds << " ratio=" << recon::FormatDouble(g.ratio) << "  ["
              << g.description << "]\n";
  }
  return kExitOk;
}

int RunOracleCheck(const OracleOptions& opt) {
  const recon::Model model = recon::LoadModel(opt.model);
  const auto knowledge = recon::Reconstruct(model);
  const auto closed = recon::WorldsPerExample(knowledge);
  std::optional<recon::AuditReport> report;
  if (!opt.report.empty()) report = recon::ParseReport(recon::ReadFile(opt.report));
  if (report && report->per_group.size() != knowledge.groups.size()) {
    std::cout << "report has " << report->per_group.size() << " groups, model has "
              << knowledge.groups.size() << "\nFAIL\n";
    return kExitFailure;
  }
  recon::OracleOptions oracle_opts;
  oracle_opts.ceiling = opt.ceiling;
  oracle_opts.collect_vectors = false;
  bool all_match = true;
  for (std::size_t j = 0; j < knowledge.groups.size(); ++j) {
    const auto enumerated =
        recon::OracleWorlds(knowledge.groups[j], knowledge.schema, oracle_opts).count;
    const recon::WorldCount claimed = report ? report->per_group[j].worlds : closed[j];
    const bool ok = claimed == enumerated;
    all_match = all_match && ok;
    std::cout << "path " << knowledge.groups[j].path_index << ": "
              << (report ? "reported=" : "closed_form=") << claimed
              << " oracle=" << enumerated << (ok ? " OK" : " MISMATCH") << "\n";
  }
  std::cout << (all_match ? "PASS" : "FAIL") << "\n";
  return all_match ? kExitOk : kExitFailure;
}

int RunExperimentCmd(const ExperimentOptions& opt) {
  const auto table = recon::LoadCsv(opt.data, opt.label);
  auto bin = recon::Binarize(table, opt.quantiles);
  for (const auto& w : bin.warnings) std::cerr << "warning: " << w << "\n";
  const auto grid = recon::GridFromJson(recon::Json::parse(recon::ReadFile(opt.grid)));
  const auto result = recon::RunExperiment(bin.data, grid, opt.workers);
  recon::WriteExperimentTables(result, opt.out_dir);
  for (const auto& f : result.failures) {
    std::cerr << "cell failed (" << recon::ModelKindName(f.cell.kind) << ", depth "
              << f.cell.depth << ", support " << f.cell.support << ", seed " << f.cell.seed
              << "): " << f.message << "\n";
  }
  std::cout << "runs=" << result.runs.size() << " failed=" << result.failures.size()
            << " out_dir=" << opt.out_dir << "\n";
  return result.failures.empty() ? kExitOk : kExitFailure;
}

int ExitCodeFor(const recon::Error& e) {
  switch (e.code()) {
    case recon::ErrorCode::kInvalidArgument:
    case recon::ErrorCode::kUndefinedForRuleLists:
    case recon::ErrorCode::kNonBinarySchema:
      return kExitUsage;
    default:
      return kExitFailure;
  }
}

unsigned DefaultWorkers() {
  if (const char* env = std::getenv("RECON_WORKERS")) {
    try {
      const long w = std::stol(env);
      if (w > 0) return static_cast<unsigned>(w);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Training-set reconstruction audits for decision trees and rule lists"};
  app.require_subcommand(1);

  TrainOptions train;
  auto* train_cmd = app.add_subcommand("train", "Train a greedy tree or rule list");
  train_cmd->add_option("--data", train.data, "Training CSV")->required()->check(CLI::ExistingFile);
  train_cmd->add_option("--label", train.label, "Label column name")->required();
  train_cmd->add_option("--kind", train.kind, "Model kind")
      ->check(CLI::IsMember({"tree", "rulelist"}));
  train_cmd->add_option("--max-depth", train.max_depth, "Maximum depth / rule count")
      ->check(CLI::PositiveNumber);
  train_cmd->add_option("--min-support", train.min_support, "Relative minimum support")
      ->check(CLI::Range(1e-9, 0.5));
  train_cmd->add_option("--seed", train.seed, "Seed for the train/test split");
  train_cmd->add_option("--train-fraction", train.train_fraction,
                        "Fraction of rows used for training (1 = all)")
      ->check(CLI::Range(1e-9, 1.0));
  train_cmd->add_option("--quantiles", train.quantiles, "Quantile count for binarization")
      ->check(CLI::Range(2, 1000));
  train_cmd->add_flag("--binarize", train.binarize, "Binarize features for trees too");
  train_cmd->add_option("--schema", train.schema, "JSON schema giving attribute domains")
      ->check(CLI::ExistingFile);
  train_cmd->add_option("--out", train.out, "Model output path")->required();

  AuditOptions audit;
  auto* audit_cmd = app.add_subcommand("audit", "Measure what a model reveals about its data");
  audit_cmd->add_option("--model", audit.model, "Model file")->required()->check(CLI::ExistingFile);
  audit_cmd->add_option("--out", audit.out, "Report output path (JSON)")->required();
  audit_cmd->add_option("--csv", audit.csv, "Per-path CSV output (default: --out with .csv)");
  audit_cmd->add_option("--original", audit.original, "Original training CSV to align against")
      ->check(CLI::ExistingFile);
  audit_cmd->add_option("--binarization", audit.binarization,
                        "Binarization rules to replay on --original")
      ->check(CLI::ExistingFile);
  audit_cmd->add_flag("--legacy-dist", audit.legacy_dist, "Also report the per-cell metric");

  OracleOptions oracle;
  auto* oracle_cmd =
      app.add_subcommand("oracle-check", "Certify world counts by exhaustive enumeration");
  oracle_cmd->add_option("--model", oracle.model, "Model file")->required()->check(CLI::ExistingFile);
  oracle_cmd->add_option("--report", oracle.report, "Check the counts recorded in this report")
      ->check(CLI::ExistingFile);
  oracle_cmd->add_option("--oracle-ceiling", oracle.ceiling,
                         "Largest number of feature vectors to enumerate");

  ExperimentOptions exp;
  exp.workers = DefaultWorkers();
  auto* exp_cmd = app.add_subcommand("experiment", "Run a train/audit grid and emit CSV tables");
  exp_cmd->add_option("--data", exp.data, "Dataset CSV")->required()->check(CLI::ExistingFile);
  exp_cmd->add_option("--label", exp.label, "Label column name")->required();
  exp_cmd->add_option("--grid", exp.grid, "Grid JSON")->required()->check(CLI::ExistingFile);
  exp_cmd->add_option("--out-dir", exp.out_dir, "Output directory")->required();
  exp_cmd->add_option("--workers", exp.workers, "Concurrent cells (env RECON_WORKERS)")
      ->check(CLI::PositiveNumber);
  exp_cmd->add_option("--quantiles", exp.quantiles, "Quantile count for binarization")
      ->check(CLI::Range(2, 1000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*train_cmd) return RunTrain(train);
    if (*audit_cmd) return RunAudit(audit);
    if (*oracle_cmd) return RunOracleCheck(oracle);
    if (*exp_cmd) return RunExperimentCmd(exp);
  } catch (const recon::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ExitCodeFor(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
