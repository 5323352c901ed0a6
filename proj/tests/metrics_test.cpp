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

#include "recon/metrics.hpp"

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "gtest/gtest.h"

namespace recon {
namespace {

// Rule list over binary attributes with supports set to 1 on every rule
// that captures at least one vector.
RuleListModel WithUnitSupports(RuleListModel m) {
  const auto rules = testing::Antecedents(m);
  const auto capts = CaptAllRules(rules, m.schema);
  for (std::size_t j = 0; j < m.rules.size(); ++j) {
    m.rules[j].class_counts = {capts[j] > 0 ? 1 : 0, 0};
  }
  return m;
}

TEST(UninformedBitsTest, ToySchema) {
  const double expected = 4.0 * (std::log2(6.0) + std::log2(2.0) + std::log2(3.0));
  EXPECT_NEAR(UninformedBits(testing::ToySchema(), 4), expected, 1e-12);
  EXPECT_NEAR(UninformedBits(testing::ToySchema(), 4), 20.6797, 1e-4);
  EXPECT_NEAR(UninformedBits(testing::ToyBinarySchema(), 5), 15.0, 1e-12);
}

TEST(UninformedBitsTest, UnaryDomainsCarryNoInformation) {
  const DatasetSchema schema({AttributeDomain("u", {4}), AttributeDomain("w", {0})},
                             AttributeDomain::Binary("y"));
  EXPECT_EQ(UninformedBits(schema, 10), 0.0);
  EXPECT_THROW(UninformedBits(schema, 0), Error);
}

TEST(Log2Test, LargeCounts) {
  EXPECT_DOUBLE_EQ(Log2(WorldCount(1) << 200), 200.0);
  EXPECT_NEAR(Log2((WorldCount(3) << 150)), 150.0 + std::log2(3.0), 1e-9);
  EXPECT_EQ(Log2(WorldCount(1)), 0.0);
}

TEST(CellRatioTest, Examples) {
  EXPECT_NEAR(CellRatio(2, 6), std::log2(2.0) / std::log2(6.0), 1e-15);
  EXPECT_NEAR(CellRatio(2, 6), 0.38685, 1e-5);
  EXPECT_EQ(CellRatio(6, 6), 1.0);
  EXPECT_EQ(CellRatio(1, 6), 0.0);
  EXPECT_EQ(CellRatio(1, 1), 0.0);
}

TEST(DistLegacyTest, ToyTree) {
  const auto k = ReconstructTree(testing::ToyTree());
  // Average of per-cell ratios over 4 examples x 3 attributes.
  const double l6 = std::log2(6.0), l3 = std::log2(3.0);
  const double ex0 = 1.0 + 1.0 + 0.0;
  const double ex1 = 1.0 / l6 + 1.0 + 1.0 / l3;
  const double ex2 = 2.0 / l6 + 1.0 + 1.0 / l3;
  const double expected = (ex0 + ex1 + 2.0 * ex2) / 12.0;
  EXPECT_NEAR(DistLegacy(k), expected, 1e-12);
  EXPECT_NEAR(DistLegacy(k), 0.7356, 1e-4);
}

TEST(DistLegacyTest, UndefinedForRuleLists) {
  const auto k = ReconstructRuleList(testing::ToyRuleList());
  try {
    DistLegacy(k);
    FAIL() << "expected UndefinedForRuleLists";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUndefinedForRuleLists);
  }
  EXPECT_THROW(NumeratorPerCell(k), Error);
}

TEST(PerExampleRatioTest, ToyKnowledge) {
  const auto schema = testing::ToySchema();
  EXPECT_NEAR(PerExampleRatio(12, schema), std::log2(12.0) / std::log2(36.0), 1e-15);
  EXPECT_NEAR(PerExampleRatio(12, schema), 0.6934, 1e-4);
  EXPECT_EQ(PerExampleRatio(1, schema), 0.0);
  EXPECT_EQ(PerExampleRatio(36, schema), 1.0);
  EXPECT_THROW(PerExampleRatio(0, schema), Error);
}

TEST(PerExampleRatioTest, ReconstructionsOfOneExample) {
  // One vs two remaining values out of {10..15} for a single known cell.
  const DatasetSchema schema({AttributeDomain::Range("a1", 10, 15)}, AttributeDomain::Binary("y"));
  EXPECT_NEAR(PerExampleRatio(3, schema), std::log2(3.0) / std::log2(6.0), 1e-15);
  EXPECT_NEAR(PerExampleRatio(3, schema), 0.6131, 1e-4);
  EXPECT_NEAR(PerExampleRatio(2, schema), 0.3869, 1e-4);
}

TEST(DistGTest, ToyRuleList) {
  const auto report = DistG(ReconstructRuleList(testing::ToyRuleList()));
  const double expected = (2.0 * 1.0 + 3.0 * std::log2(3.0)) / 15.0;
  EXPECT_NEAR(report.dist_g, expected, 1e-12);
  EXPECT_NEAR(report.dist_g, 0.4503, 1e-4);
  EXPECT_FALSE(report.dist_legacy.has_value());
  EXPECT_NEAR(report.denominator_bits, 15.0, 1e-12);
  EXPECT_NEAR(report.numerator_bits, 2.0 + 3.0 * std::log2(3.0), 1e-12);
  ASSERT_EQ(report.per_group.size(), 3u);
  EXPECT_EQ(report.per_group[0].worlds, 2);
  EXPECT_EQ(report.per_group[1].worlds, 3);
  EXPECT_EQ(report.per_group[2].worlds, 3);
}

TEST(DistGTest, ToyTree) {
  const auto report = DistG(ReconstructTree(testing::ToyTree()));
  const double expected =
      (std::log2(12.0) + std::log2(8.0) + 2.0 * std::log2(16.0)) / (4.0 * std::log2(36.0));
  EXPECT_NEAR(report.dist_g, expected, 1e-12);
  ASSERT_TRUE(report.dist_legacy.has_value());
  EXPECT_NEAR(*report.dist_legacy, 0.7356, 1e-4);
}

TEST(DistGTest, ExtremesAreExact) {
  const auto data = testing::ToyDataset();
  EXPECT_EQ(DistG(ExactKnowledge(data)).dist_g, 0.0);
  EXPECT_EQ(DistG(NoKnowledge(data.schema(), 4)).dist_g, 1.0);
  EXPECT_EQ(*DistG(NoKnowledge(data.schema(), 4)).dist_legacy, 1.0);
  EXPECT_EQ(*DistG(ExactKnowledge(data)).dist_legacy, 0.0);
}

TEST(LeakCdfTest, ToyRuleList) {
  const auto report = DistG(ReconstructRuleList(testing::ToyRuleList()));
  ASSERT_EQ(report.leak_distribution.size(), 2u);
  EXPECT_NEAR(report.leak_distribution[0].ratio, 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(report.leak_distribution[0].proportion, 0.4, 1e-12);
  EXPECT_NEAR(report.leak_distribution[1].ratio, std::log2(3.0) / 3.0, 1e-12);
  EXPECT_EQ(report.leak_distribution[1].proportion, 1.0);
}

TEST(LeakCdfTest, UnweightedRatios) {
  const auto cdf = LeakCdf(std::vector<double>{0.5, 0.2, 0.5, 0.9});
  ASSERT_EQ(cdf.size(), 3u);
  EXPECT_EQ(cdf[0], (LeakPoint{0.2, 0.25}));
  EXPECT_EQ(cdf[1], (LeakPoint{0.5, 0.75}));
  EXPECT_EQ(cdf[2], (LeakPoint{0.9, 1.0}));
}

TEST(LeakCdfTest, ZeroWeightsAreSkipped) {
  const auto cdf = LeakCdf(std::vector<std::pair<double, std::int64_t>>{{0.1, 0}, {0.7, 2}});
  ASSERT_EQ(cdf.size(), 1u);
  EXPECT_EQ(cdf[0], (LeakPoint{0.7, 1.0}));
}

TEST(ReportTest, JsonRoundTrip) {
  auto report = DistG(ReconstructTree(testing::ToyTree()));
  report.alignment_cost = 0.0;
  const auto back = ParseReport(SerializeReport(report));
  EXPECT_EQ(back.kind, report.kind);
  EXPECT_EQ(back.num_examples, 4);
  EXPECT_EQ(back.dist_g, report.dist_g);
  EXPECT_EQ(back.dist_legacy, report.dist_legacy);
  EXPECT_EQ(back.alignment_cost, report.alignment_cost);
  ASSERT_EQ(back.per_group.size(), report.per_group.size());
  for (std::size_t j = 0; j < back.per_group.size(); ++j) {
    EXPECT_EQ(back.per_group[j].worlds, report.per_group[j].worlds);
    EXPECT_EQ(back.per_group[j].description, report.per_group[j].description);
    EXPECT_EQ(back.per_group[j].class_counts, report.per_group[j].class_counts);
  }
  EXPECT_EQ(back.leak_distribution, report.leak_distribution);
  EXPECT_THROW(ParseReport("{\"dist_g\": 1}"), Error);
}

TEST(ReportTest, CsvHasOneRowPerPath) {
  const auto report = DistG(ReconstructRuleList(testing::ToyRuleList()));
  const std::string csv = ReportToCsv(report);
  std::vector<std::string> lines;
  std::size_t start = 0;
  for (std::size_t i = 0; i < csv.size(); ++i) {
    if (csv[i] == '\n') {
      lines.push_back(csv.substr(start, i - start));
      start = i + 1;
    }
  }
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(SplitCsvLine(lines[0]), ReportCsvHeader());
  const auto row = SplitCsvLine(lines[2]);
  ASSERT_EQ(row.size(), ReportCsvHeader().size());
  EXPECT_EQ(row[0], "1");
  EXPECT_EQ(row[2], "3");
  EXPECT_EQ(row[6], "a3 = 1; NOT (a1 = 1 AND a2 = 1)");
}

TEST(MetricsProperty, NumeratorDecompositionsAgree) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    auto tree = testing::RandomTree(rng, 1 + trial % 5, 6);
    if (tree.num_examples() == 0) tree.branches[0].class_counts = {1, 0, 0};
    bool ok = true;
    try {
      (void)ReconstructTree(tree);
    } catch (const Error&) {
      ok = false;
    }
    if (!ok) continue;
    const auto k = ReconstructTree(tree);
    const double paths = NumeratorByPaths(k);
    const double tol = 1e-12 * std::max(1.0, paths);
    ASSERT_NEAR(NumeratorPerExample(k), paths, tol);
    ASSERT_NEAR(NumeratorPerCell(k), paths, tol);
    const auto report = DistG(k);
    ASSERT_NEAR(report.numerator_bits, paths, tol);
    const double ratio = report.denominator_bits == 0.0 ? 0.0 : paths / report.denominator_bits;
    ASSERT_NEAR(report.dist_g, ratio, 1e-12);
    ASSERT_GE(report.dist_g, 0.0);
    ASSERT_LE(report.dist_g, 1.0);
  }
}

TEST(MetricsProperty, RuleListDecompositionsAgree) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    const auto rl = WithUnitSupports(testing::RandomRuleList(rng, 1 + trial % 10, 1 + trial % 5, 3));
    const auto k = ReconstructRuleList(rl);
    const double paths = NumeratorByPaths(k);
    ASSERT_NEAR(NumeratorPerExample(k), paths, 1e-12 * std::max(1.0, paths));
    const auto report = DistG(k);
    ASSERT_NEAR(report.dist_g, paths / report.denominator_bits, 1e-12);
    ASSERT_GE(report.dist_g, 0.0);
    ASSERT_LE(report.dist_g, 1.0);
    ASSERT_EQ(report.leak_distribution.back().proportion, 1.0);
  }
}

TEST(MetricsProperty, ExclusionsNeverAddUncertainty) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const auto rl = WithUnitSupports(testing::RandomRuleList(rng, 1 + trial % 10, 1 + trial % 5, 3));
    const auto k = ReconstructRuleList(rl);
    const auto worlds = WorldsPerExample(k);
    for (std::size_t j = 0; j < worlds.size(); ++j) {
      if (k.groups[j].multiplicity == 0) continue;
      // Bits knowing only rule j's own antecedent.
      const WorldCount matched_only = Num(rl.rules[j].conditions, rl.schema);
      ASSERT_LE(Log2(worlds[j]), Log2(matched_only) + 1e-12);
    }
  }
}

}  // namespace
}  // namespace recon
