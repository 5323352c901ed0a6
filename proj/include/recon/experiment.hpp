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

// Leak-versus-budget experiment harness: trains greedy models over a grid
// of (kind, max depth, min support, seed), audits each one and writes tidy
// CSV tables ready for plotting.

#ifndef RECON_EXPERIMENT_HPP_
#define RECON_EXPERIMENT_HPP_

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "recon/dataio.hpp"
#include "recon/domain.hpp"
#include "recon/error.hpp"
#include "recon/learners.hpp"
#include "recon/metrics.hpp"
#include "recon/model_io.hpp"
#include "recon/reconstruction.hpp"
#include "recon/text.hpp"

namespace recon {

struct ExperimentGrid {
  std::vector<int> depths;
  std::vector<double> supports;
  std::vector<std::uint64_t> seeds;
  std::vector<ModelKind> model_kinds;
  double train_fraction = 0.8;
  std::size_t max_cells = 100000;

  std::size_t num_cells() const {
    return depths.size() * supports.size() * seeds.size() * model_kinds.size();
  }

  void Validate() const {
    if (depths.empty() || supports.empty() || seeds.empty() || model_kinds.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "every grid axis must be non-empty");
    }
    if (num_cells() > max_cells) {
      throw Error(ErrorCode::kInvalidArgument,
                  "grid has " + std::to_string(num_cells()) + " cells, cap is " +
                      std::to_string(max_cells));
    }
    for (int d : depths) {
      if (d < 1) throw Error(ErrorCode::kInvalidArgument, "grid depths must be >= 1");
    }
    for (double s : supports) {
      if (!(s > 0.0 && s <= 0.5)) {
        throw Error(ErrorCode::kInvalidArgument, "grid supports must lie in (0, 0.5]");
      }
    }
    if (!(train_fraction > 0.0 && train_fraction <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument, "train_fraction must lie in (0, 1]");
    }
  }
};

inline ExperimentGrid GridFromJson(const Json& j) {
  try {
    ExperimentGrid g;
    g.depths = j.at("depths").get<std::vector<int>>();
    g.supports = j.at("supports").get<std::vector<double>>();
    g.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    for (const auto& k : j.at("model_kinds")) {
      const auto name = k.get<std::string>();
      if (name == "tree") {
        g.model_kinds.push_back(ModelKind::kTree);
      } else if (name == "rulelist") {
        g.model_kinds.push_back(ModelKind::kRuleList);
      } else {
        throw Error(ErrorCode::kParseError, "unknown model kind '" + name + "'");
      }
    }
    if (j.contains("train_fraction")) g.train_fraction = j.at("train_fraction").get<double>();
    if (j.contains("max_cells")) g.max_cells = j.at("max_cells").get<std::size_t>();
    g.Validate();
    return g;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
}

struct ExperimentCell {
  ModelKind kind = ModelKind::kTree;
  int depth = 1;
  double support = 0.05;
  std::uint64_t seed = 0;
};

struct RunRecord {
  ExperimentCell cell;
  std::size_t model_size = 0;
  double train_accuracy = 0.0;
  std::optional<double> test_accuracy;
  double dist_g = 0.0;
  std::vector<LeakPoint> leak_cdf;
};

struct CellFailure {
  ExperimentCell cell;
  std::string message;
};

struct ExperimentResult {
  std::vector<RunRecord> runs;
  std::vector<CellFailure> failures;
};

inline std::vector<ExperimentCell> EnumerateCells(const ExperimentGrid& grid) {
  std::vector<ExperimentCell> cells;
  for (ModelKind kind : grid.model_kinds) {
    for (double support : grid.supports) {
      for (std::uint64_t seed : grid.seeds) {
        for (int depth : grid.depths) cells.push_back({kind, depth, support, seed});
      }
    }
  }
  return cells;
}

inline RunRecord RunCell(const DeterministicDataset& data, const ExperimentGrid& grid,
                         const ExperimentCell& cell) {
  std::optional<DeterministicDataset> test;
  DeterministicDataset train = data;
  if (grid.train_fraction < 1.0) {
    auto parts = Split(data, grid.train_fraction, cell.seed);
    train = std::move(parts.first);
    test = std::move(parts.second);
  }
  const LearnerConfig cfg{cell.depth, cell.support, cell.seed};
  Model model = cell.kind == ModelKind::kTree ? Model(TrainGreedyTree(train, cfg))
                                              : Model(TrainGreedyRuleList(train, cfg));
  RunRecord rec;
  rec.cell = cell;
  rec.model_size = std::visit([](const auto& m) { return m.size(); }, model);
  rec.train_accuracy = Accuracy(model, train);
  if (test) rec.test_accuracy = Accuracy(model, *test);
  const AuditReport report = DistG(Reconstruct(model));
  rec.dist_g = report.dist_g;
  rec.leak_cdf = report.leak_distribution;
  return rec;
}

// Runs every cell on up to `workers` threads. Failed cells are recorded
// and do not stop the others.
inline ExperimentResult RunExperiment(const DeterministicDataset& data,
                                      const ExperimentGrid& grid, unsigned workers = 1) {
  grid.Validate();
  const auto cells = EnumerateCells(grid);
  std::vector<std::optional<RunRecord>> slots(cells.size());
  std::vector<std::optional<std::string>> errors(cells.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      try {
        slots[i] = RunCell(data, grid, cells[i]);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(cells.size())));
  std::vector<std::thread> threads;
  for (unsigned w = 1; w < workers; ++w) threads.emplace_back(work);
  work();
  for (auto& t : threads) t.join();
  // Results keep grid order regardless of scheduling.
  ExperimentResult result;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (slots[i]) result.runs.push_back(std::move(*slots[i]));
    if (errors[i]) result.failures.push_back({cells[i], std::move(*errors[i])});
  }
  return result;
}

namespace internal {

inline std::vector<std::string> CellFields(const ExperimentCell& c) {
  return {std::string(ModelKindName(c.kind)), std::to_string(c.depth),
          FormatDouble(c.support), std::to_string(c.seed)};
}

inline std::string OptionalField(const std::optional<double>& x) {
  return x ? FormatDouble(*x) : "";
}

}  // namespace internal

// File name -> contents for every emitted table.
inline std::vector<std::pair<std::string, std::string>> ExperimentTables(
    const ExperimentResult& result) {
  const std::vector<std::string> key = {"kind", "depth", "min_support", "seed"};
  auto with = [&](std::vector<std::string> extra) {
    std::vector<std::string> h = key;
    h.insert(h.end(), extra.begin(), extra.end());
    return CsvLine(h);
  };
  std::string size_entropy = with({"model_size", "dist_g"});
  std::string acc_entropy = with({"train_accuracy", "test_accuracy", "dist_g"});
  std::string depth_size = with({"model_size"});
  std::string depth_entropy = with({"dist_g"});
  std::string support_entropy = with({"dist_g"});
  std::string leak = with({"ratio", "proportion"});
  for (const auto& r : result.runs) {
    const auto base = internal::CellFields(r.cell);
    auto row = [&](std::vector<std::string> extra) {
      std::vector<std::string> f = base;
      f.insert(f.end(), extra.begin(), extra.end());
      return CsvLine(f);
    };
    const std::string size = std::to_string(r.model_size);
    const std::string dg = FormatDouble(r.dist_g);
    size_entropy += row({size, dg});
    acc_entropy += row({FormatDouble(r.train_accuracy), internal::OptionalField(r.test_accuracy), dg});
    depth_size += row({size});
    depth_entropy += row({dg});
    support_entropy += row({dg});
    for (const auto& p : r.leak_cdf) leak += row({FormatDouble(p.ratio), FormatDouble(p.proportion)});
  }
  std::vector<std::pair<std::string, std::string>> tables = {
      {"size_vs_entropy.csv", size_entropy},
      {"accuracy_vs_entropy.csv", acc_entropy},
      {"depth_vs_size.csv", depth_size},
      {"depth_vs_entropy.csv", depth_entropy},
      {"support_vs_entropy.csv", support_entropy},
      {"leak_cdf.csv", leak}};
  if (!result.failures.empty()) {
    std::string failed = with({"error"});
    for (const auto& f : result.failures) {
      auto fields = internal::CellFields(f.cell);
      fields.push_back(f.message);
      failed += CsvLine(fields);
    }
    tables.emplace_back("failed_cells.csv", failed);
  }
  return tables;
}

inline void WriteExperimentTables(const ExperimentResult& result,
                                  const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  for (const auto& [name, contents] : ExperimentTables(result)) {
    WriteFileAtomic((out_dir / name).string(), contents);
  }
}

}  // namespace recon

#endif  // RECON_EXPERIMENT_HPP_
