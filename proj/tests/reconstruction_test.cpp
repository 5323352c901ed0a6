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

#include "recon/reconstruction.hpp"

#include <random>

#include "fixtures.hpp"
#include "gtest/gtest.h"

namespace recon {
namespace {

using Values = std::vector<Value>;

const TreeExampleKnowledge& TreeKnowledge(const KnowledgeGroup& g) {
  return std::get<TreeExampleKnowledge>(g.knowledge);
}

TEST(ReconstructTreeTest, ToyTreeReproducesReducedDomains) {
  const auto k = ReconstructTree(testing::ToyTree());
  ASSERT_EQ(k.groups.size(), 3u);
  // a3 <= 1.5: one example, a1 unknown, a3 fixed to 1.
  EXPECT_EQ(k.groups[0].multiplicity, 1);
  EXPECT_EQ(TreeKnowledge(k.groups[0]).reduced_domains,
            (std::vector<Values>{{10, 11, 12, 13, 14, 15}, {0, 1}, {1}}));
  // a3 > 1.5 and a1 <= 11.5: one example.
  EXPECT_EQ(TreeKnowledge(k.groups[1]).reduced_domains,
            (std::vector<Values>{{10, 11}, {0, 1}, {2, 3}}));
  // a3 > 1.5 and a1 > 11.5: two examples labelled 0.
  EXPECT_EQ(k.groups[2].multiplicity, 2);
  EXPECT_EQ(k.groups[2].prediction, 0);
  EXPECT_EQ(TreeKnowledge(k.groups[2]).reduced_domains,
            (std::vector<Values>{{12, 13, 14, 15}, {0, 1}, {2, 3}}));
  EXPECT_EQ(k.num_examples(), 4);
}

TEST(ReconstructTreeTest, SingleLeafKnowsNothing) {
  DecisionTreeModel leaf{testing::ToySchema(), {DecisionPath{{}, 0, {2, 2}}}};
  const auto k = ReconstructTree(leaf);
  ASSERT_EQ(k.groups.size(), 1u);
  EXPECT_EQ(k.groups[0].multiplicity, 4);
  for (std::size_t a = 0; a < 3; ++a) {
    EXPECT_EQ(TreeKnowledge(k.groups[0]).reduced_domains[a], leaf.schema.attribute(a).values());
  }
}

TEST(ReconstructTreeTest, ContradictoryBranchWithSupportIsRejected) {
  DecisionTreeModel bad{testing::ToySchema(),
                        {DecisionPath{{Condition::Equals(1, 0), Condition::Equals(1, 1)}, 0, {1, 0}},
                         DecisionPath{{}, 0, {1, 0}}}};
  try {
    ReconstructTree(bad);
    FAIL() << "expected ContradictoryPath";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kContradictoryPath);
  }
  bad.branches[0].class_counts = {0, 0};
  EXPECT_NO_THROW(ReconstructTree(bad));
}

TEST(ReconstructRuleListTest, SecondRuleExcludesFirst) {
  const auto k = ReconstructRuleList(testing::ToyRuleList());
  ASSERT_EQ(k.groups.size(), 3u);
  const auto& rk = std::get<RuleExampleKnowledge>(k.groups[1].knowledge);
  EXPECT_EQ(rk.matched, (Conjunction{Condition::Equals(2, 1)}));
  ASSERT_EQ(rk.excluded.size(), 1u);
  // Consistent vectors: (a1, a2) in {(0,0), (0,1), (1,0)}, a3 = 1.
  const auto oracle = OracleWorlds(k.groups[1], k.schema);
  EXPECT_EQ(oracle.vectors,
            (std::vector<Values>{{0, 0, 1}, {0, 1, 1}, {1, 0, 1}}));
}

TEST(ReconstructRuleListTest, FirstRuleHasNoExclusions) {
  const auto k = ReconstructRuleList(testing::ToyRuleList());
  const auto& rk = std::get<RuleExampleKnowledge>(k.groups[0].knowledge);
  EXPECT_TRUE(rk.excluded.empty());
  EXPECT_EQ(OracleWorlds(k.groups[0], k.schema).count,
            Num(rk.matched, k.schema));
}

TEST(ReconstructRuleListTest, DefaultRuleKnowsAllNegations) {
  const auto k = ReconstructRuleList(testing::ToyRuleList());
  const auto& rk = std::get<RuleExampleKnowledge>(k.groups[2].knowledge);
  EXPECT_TRUE(rk.matched.is_true());
  EXPECT_EQ(rk.excluded.size(), 2u);
  EXPECT_EQ(k.groups[2].multiplicity, 1);
  EXPECT_EQ(OracleWorlds(k.groups[2], k.schema).vectors,
            (std::vector<Values>{{0, 0, 0}, {0, 1, 0}, {1, 0, 0}}));
}

TEST(ReconstructRuleListTest, ShadowedRuleWithSupportIsRejected) {
  auto rl = testing::ToyRuleList();
  // a1 = 1 AND a2 = 1 is fully captured by rule 0.
  rl.rules.insert(rl.rules.begin() + 1,
                  DecisionPath{{Condition::Equals(0, 1), Condition::Equals(1, 1)}, 0, {1, 0}});
  try {
    ReconstructRuleList(rl);
    FAIL() << "expected EmptyCapture";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyCapture);
  }
}

TEST(DescribeGroupTest, RendersBothKinds) {
  const auto tk = ReconstructTree(testing::ToyTree());
  EXPECT_EQ(DescribeGroup(tk.groups[1], tk.schema), "a1 in {10, 11}; a2 in {0, 1}; a3 in {2, 3}");
  const auto rk = ReconstructRuleList(testing::ToyRuleList());
  EXPECT_EQ(DescribeGroup(rk.groups[1], rk.schema), "a3 = 1; NOT (a1 = 1 AND a2 = 1)");
}

// Every training row lies in the consistent set of the path capturing it.
TEST(ReconstructionProperty, TrainedModelsAreCompatibleWithTheirData) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    const auto data = testing::RandomBinaryDataset(rng, 40, 6);
    const LearnerConfig cfg{1 + trial % 5, 0.05, 0};
    for (const Model& m : {Model(TrainGreedyTree(data, cfg)), Model(TrainGreedyRuleList(data, cfg))}) {
      const auto k = Reconstruct(m);
      ASSERT_EQ(k.num_examples(), static_cast<std::int64_t>(data.size()));
      for (std::size_t i = 0; i < data.size(); ++i) {
        const auto j = std::visit([&](const auto& mm) { return mm.Route(data.row(i)); }, m);
        ASSERT_TRUE(j.has_value());
        ASSERT_TRUE(k.groups[*j].Admits(data.row(i)));
      }
    }
  }
}

// For trees the consistent set is the Cartesian product of reduced domains.
TEST(ReconstructionProperty, TreeGroupsAreProducts) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto tree = testing::RandomTree(rng, 3, 4);
    const auto k = ReconstructTree(tree);
    for (const auto& g : k.groups) {
      const auto oracle = OracleWorlds(g, k.schema);
      std::size_t product = 1;
      for (const auto& d : TreeKnowledge(g).reduced_domains) product *= d.size();
      ASSERT_EQ(oracle.vectors.size(), product);
      for (const auto& v : oracle.vectors) {
        for (std::size_t a = 0; a < v.size(); ++a) {
          const auto& d = TreeKnowledge(g).reduced_domains[a];
          ASSERT_NE(std::find(d.begin(), d.end(), v[a]), d.end());
        }
      }
    }
  }
}

}  // namespace
}  // namespace recon
