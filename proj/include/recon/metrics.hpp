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

// Reconstruction-success metrics.
//
// Under the uniform-worlds assumption a decision path whose examples each
// have W compatible feature vectors contributes log2(W) bits per example.
// The generalized ratio divides the total by the uninformed baseline
// n * sum_k log2|V_k|: 0 means the training set is fully recovered, 1 means
// the model reveals nothing about it.

#ifndef RECON_METRICS_HPP_
#define RECON_METRICS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "recon/counting.hpp"
#include "recon/domain.hpp"
#include "recon/error.hpp"
#include "recon/knowledge.hpp"
#include "recon/model_io.hpp"
#include "recon/reconstruction.hpp"
#include "recon/text.hpp"

namespace recon {

// log2 of an exact count. Counts above 2^53 are reduced to their top 64
// bits first, which keeps the relative error far below 1e-12.
inline double Log2(const WorldCount& count) {
  if (count <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "log2 of a non-positive count");
  }
  const std::size_t bits = boost::multiprecision::msb(count) + 1;
  if (bits <= 53) return std::log2(count.convert_to<double>());
  const std::size_t shift = bits - 64;
  const auto top = static_cast<std::uint64_t>(count >> shift);
  return static_cast<double>(shift) +
         static_cast<double>(std::log2(static_cast<long double>(top)));
}

// Entropy of an uninformed example: log2 of the number of feature vectors.
inline double BaselineBitsPerExample(const DatasetSchema& schema) {
  return Log2(UniverseSize(schema));
}

inline double UninformedBits(const DatasetSchema& schema, std::int64_t n) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "n must be at least 1");
  return static_cast<double>(n) * BaselineBitsPerExample(schema);
}

// H(reduced cell) / H(uninformed cell); unary domains give 0.
inline double CellRatio(std::size_t reduced_size, std::size_t domain_size) {
  if (domain_size <= 1 || reduced_size <= 1) return 0.0;
  if (reduced_size == domain_size) return 1.0;
  return std::log2(static_cast<double>(reduced_size)) /
         std::log2(static_cast<double>(domain_size));
}

// Legacy per-cell average. Only defined for tree-style knowledge, where the
// cells of an example are independent.
inline double DistLegacy(const ReconstructionKnowledge& knowledge) {
  if (knowledge.kind != ModelKind::kTree) {
    throw Error(ErrorCode::kUndefinedForRuleLists,
                "the per-cell ratio needs independent cells; use dist_g");
  }
  const std::int64_t n = knowledge.num_examples();
  const std::size_t d = knowledge.schema.num_attributes();
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "knowledge covers no examples");
  if (d == 0) return 0.0;
  double total = 0.0;
  for (const auto& g : knowledge.groups) {
    const auto& tk = std::get<TreeExampleKnowledge>(g.knowledge);
    double row = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      row += CellRatio(tk.reduced_domains[k].size(), knowledge.schema.attribute(k).size());
    }
    total += static_cast<double>(g.multiplicity) * row;
  }
  return total / (static_cast<double>(n) * static_cast<double>(d));
}

inline double PerExampleRatio(const WorldCount& worlds, const DatasetSchema& schema) {
  if (worlds < 1) throw Error(ErrorCode::kInvalidArgument, "world count must be >= 1");
  const double baseline = BaselineBitsPerExample(schema);
  if (baseline == 0.0) return 0.0;
  return Log2(worlds) / baseline;
}

struct LeakPoint {
  double ratio = 0.0;
  double proportion = 0.0;

  friend bool operator==(const LeakPoint&, const LeakPoint&) = default;
};

// Empirical CDF of per-example ratios given as (ratio, multiplicity) pairs.
inline std::vector<LeakPoint> LeakCdf(
    const std::vector<std::pair<double, std::int64_t>>& weighted) {
  std::map<double, std::int64_t> merged;
  std::int64_t total = 0;
  for (const auto& [ratio, weight] : weighted) {
    if (weight <= 0) continue;
    merged[ratio] += weight;
    total += weight;
  }
  std::vector<LeakPoint> out;
  std::int64_t running = 0;
  for (const auto& [ratio, weight] : merged) {
    running += weight;
    out.push_back({ratio, running == total ? 1.0
                                           : static_cast<double>(running) /
                                                 static_cast<double>(total)});
  }
  return out;
}

inline std::vector<LeakPoint> LeakCdf(const std::vector<double>& ratios) {
  std::vector<std::pair<double, std::int64_t>> weighted;
  weighted.reserve(ratios.size());
  for (double r : ratios) weighted.emplace_back(r, 1);
  return LeakCdf(weighted);
}

struct GroupReport {
  std::size_t path_index = 0;
  std::int64_t multiplicity = 0;
  WorldCount worlds = 0;
  double bits_per_example = 0.0;
  double ratio = 0.0;
  Value prediction = 0;
  std::vector<std::int64_t> class_counts;
  std::string description;
};

struct AuditReport {
  ModelKind kind = ModelKind::kTree;
  std::int64_t num_examples = 0;
  std::optional<double> dist_legacy;
  double dist_g = 0.0;
  double numerator_bits = 0.0;
  double denominator_bits = 0.0;
  std::vector<GroupReport> per_group;
  std::vector<LeakPoint> leak_distribution;
  std::optional<double> alignment_cost;

  // Smallest and largest per-example ratio over groups with support.
  std::pair<double, double> RatioRange() const {
    double lo = 1.0, hi = 0.0;
    for (const auto& g : per_group) {
      if (g.multiplicity == 0) continue;
      lo = std::min(lo, g.ratio);
      hi = std::max(hi, g.ratio);
    }
    return {lo, hi};
  }
};

// Numerator as a support-weighted sum over decision paths.
inline double NumeratorByPaths(const ReconstructionKnowledge& knowledge) {
  const auto worlds = WorldsPerExample(knowledge);
  double bits = 0.0;
  for (std::size_t j = 0; j < worlds.size(); ++j) {
    const auto& g = knowledge.groups[j];
    if (g.multiplicity == 0) continue;
    bits += static_cast<double>(g.multiplicity) * Log2(worlds[j]);
  }
  return bits;
}

// Numerator as a sum over the n individual examples, each contributing
// log2 of its own possible-world count.
inline double NumeratorPerExample(const ReconstructionKnowledge& knowledge) {
  const auto worlds = WorldsPerExample(knowledge);
  double bits = 0.0;
  for (std::size_t j = 0; j < worlds.size(); ++j) {
    const double per = knowledge.groups[j].multiplicity > 0 ? Log2(worlds[j]) : 0.0;
    for (std::int64_t i = 0; i < knowledge.groups[j].multiplicity; ++i) bits += per;
  }
  return bits;
}

// Numerator as a sum of independent cell entropies; trees only.
inline double NumeratorPerCell(const ReconstructionKnowledge& knowledge) {
  if (knowledge.kind != ModelKind::kTree) {
    throw Error(ErrorCode::kUndefinedForRuleLists, "cells of a rule list are not independent");
  }
  double bits = 0.0;
  for (const auto& g : knowledge.groups) {
    const auto& tk = std::get<TreeExampleKnowledge>(g.knowledge);
    for (std::int64_t i = 0; i < g.multiplicity; ++i) {
      for (const auto& d : tk.reduced_domains) {
        bits += std::log2(static_cast<double>(d.size()));
      }
    }
  }
  return bits;
}

inline AuditReport DistG(const ReconstructionKnowledge& knowledge) {
  const std::int64_t n = knowledge.num_examples();
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "knowledge covers no examples");
  const auto worlds = WorldsPerExample(knowledge);
  const double baseline = BaselineBitsPerExample(knowledge.schema);

  AuditReport report;
  report.kind = knowledge.kind;
  report.num_examples = n;
  report.denominator_bits = static_cast<double>(n) * baseline;
  if (knowledge.kind == ModelKind::kTree) report.dist_legacy = DistLegacy(knowledge);

  // dist_g is accumulated as the support-weighted mean of per-example
  // ratios so that the all-known and no-knowledge extremes are exact.
  double weighted_ratio = 0.0;
  std::vector<std::pair<double, std::int64_t>> leaks;
  for (std::size_t j = 0; j < knowledge.groups.size(); ++j) {
    const auto& g = knowledge.groups[j];
    GroupReport gr;
    gr.path_index = g.path_index;
    gr.multiplicity = g.multiplicity;
    gr.worlds = worlds[j];
    gr.prediction = g.prediction;
    gr.class_counts = g.class_counts;
    gr.description = DescribeGroup(g, knowledge.schema);
    if (worlds[j] > 0) {
      gr.bits_per_example = Log2(worlds[j]);
      gr.ratio = baseline == 0.0 ? 0.0 : gr.bits_per_example / baseline;
    } else if (g.multiplicity > 0) {
      throw Error(ErrorCode::kEmptyCapture,
                  "path " + std::to_string(g.path_index) + " has support but no worlds");
    }
    report.numerator_bits += static_cast<double>(g.multiplicity) * gr.bits_per_example;
    weighted_ratio += static_cast<double>(g.multiplicity) * gr.ratio;
    leaks.emplace_back(gr.ratio, g.multiplicity);
    report.per_group.push_back(std::move(gr));
  }
  report.dist_g = weighted_ratio / static_cast<double>(n);
  report.leak_distribution = LeakCdf(leaks);
  return report;
}

inline Json ReportToJson(const AuditReport& report) {
  Json groups = Json::array();
  for (const auto& g : report.per_group) {
    groups.push_back(Json{{"path_index", g.path_index},
                          {"multiplicity", g.multiplicity},
                          {"world_count", g.worlds.str()},
                          {"bits_per_example", g.bits_per_example},
                          {"ratio", g.ratio},
                          {"prediction", g.prediction},
                          {"class_counts", g.class_counts},
                          {"knowledge", g.description}});
  }
  Json cdf = Json::array();
  for (const auto& p : report.leak_distribution) {
    cdf.push_back(Json{{"ratio", p.ratio}, {"proportion", p.proportion}});
  }
  Json out{{"model_kind", std::string(ModelKindName(report.kind))},
           {"num_examples", report.num_examples},
           {"dist_g", report.dist_g},
           {"numerator_bits", report.numerator_bits},
           {"denominator_bits", report.denominator_bits}};
  out["dist_legacy"] = report.dist_legacy ? Json(*report.dist_legacy) : Json(nullptr);
  out["alignment_cost"] = report.alignment_cost ? Json(*report.alignment_cost) : Json(nullptr);
  out["per_group"] = std::move(groups);
  out["leak_distribution"] = std::move(cdf);
  return out;
}

inline AuditReport ReportFromJson(const Json& j) {
  try {
    AuditReport r;
    r.kind = j.at("model_kind").get<std::string>() == "tree" ? ModelKind::kTree
                                                             : ModelKind::kRuleList;
    r.num_examples = j.at("num_examples").get<std::int64_t>();
    r.dist_g = j.at("dist_g").get<double>();
    r.numerator_bits = j.at("numerator_bits").get<double>();
    r.denominator_bits = j.at("denominator_bits").get<double>();
    if (!j.at("dist_legacy").is_null()) r.dist_legacy = j.at("dist_legacy").get<double>();
    if (!j.at("alignment_cost").is_null()) {
      r.alignment_cost = j.at("alignment_cost").get<double>();
    }
    for (const auto& g : j.at("per_group")) {
      GroupReport gr;
      gr.path_index = g.at("path_index").get<std::size_t>();
      gr.multiplicity = g.at("multiplicity").get<std::int64_t>();
      gr.worlds = WorldCount(g.at("world_count").get<std::string>());
      gr.bits_per_example = g.at("bits_per_example").get<double>();
      gr.ratio = g.at("ratio").get<double>();
      gr.prediction = g.at("prediction").get<Value>();
      gr.class_counts = g.at("class_counts").get<std::vector<std::int64_t>>();
      gr.description = g.at("knowledge").get<std::string>();
      r.per_group.push_back(std::move(gr));
    }
    for (const auto& p : j.at("leak_distribution")) {
      r.leak_distribution.push_back({p.at("ratio").get<double>(), p.at("proportion").get<double>()});
    }
    return r;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParseError, e.what());
  } catch (const std::runtime_error& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
}

inline std::string SerializeReport(const AuditReport& report) {
  return ReportToJson(report).dump(2) + "\n";
}

inline AuditReport ParseReport(std::string_view text) {
  try {
    return ReportFromJson(Json::parse(text));
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
}

inline const std::vector<std::string>& ReportCsvHeader() {
  static const std::vector<std::string> header = {
      "path_index", "multiplicity", "world_count", "bits_per_example",
      "ratio",      "prediction",   "knowledge"};
  return header;
}

// One row per decision path.
inline std::string ReportToCsv(const AuditReport& report) {
  std::string out = CsvLine(ReportCsvHeader());
  for (const auto& g : report.per_group) {
    out += CsvLine({std::to_string(g.path_index), std::to_string(g.multiplicity),
                    g.worlds.str(), FormatDouble(g.bits_per_example),
                    FormatDouble(g.ratio), std::to_string(g.prediction),
                    g.description});
  }
  return out;
}

}  // namespace recon

#endif  // RECON_METRICS_HPP_
