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

// Shared fixtures: the two toy datasets with their models, and random
// instance generators for property tests.

#ifndef RECON_TESTS_FIXTURES_HPP_
#define RECON_TESTS_FIXTURES_HPP_

#include <algorithm>
#include <random>
#include <vector>

#include "recon/recon.hpp"

namespace recon::testing {

// Three attributes with domains {10..15}, {0,1}, {1,2,3}; binary label.
inline DatasetSchema ToySchema() {
  return DatasetSchema({AttributeDomain::Range("a1", 10, 15), AttributeDomain::Binary("a2"),
                        AttributeDomain::Range("a3", 1, 3)},
                       AttributeDomain::Binary("Label"));
}

inline DeterministicDataset ToyDataset() {
  return DeterministicDataset(ToySchema(),
                              {{12, 0, 3}, {14, 1, 2}, {11, 1, 2}, {14, 0, 1}},
                              {0, 0, 1, 1});
}

// Root splits a3 at 1.5, then a1 at 11.5 on the right; leaf supports 1, 1, 2.
inline DecisionTreeModel ToyTree() {
  const std::size_t a1 = 0, a3 = 2;
  return DecisionTreeModel{
      ToySchema(),
      {DecisionPath{{Condition::LessEq(a3, Decimal::Parse("1.5"))}, 1, {0, 1}},
       DecisionPath{{Condition::Greater(a3, Decimal::Parse("1.5")),
                     Condition::LessEq(a1, Decimal::Parse("11.5"))},
                    1,
                    {0, 1}},
       DecisionPath{{Condition::Greater(a3, Decimal::Parse("1.5")),
                     Condition::Greater(a1, Decimal::Parse("11.5"))},
                    0,
                    {2, 0}}}};
}

inline DatasetSchema ToyBinarySchema() {
  return DatasetSchema({AttributeDomain::Binary("a1"), AttributeDomain::Binary("a2"),
                        AttributeDomain::Binary("a3")},
                       AttributeDomain::Binary("Label"));
}

inline DeterministicDataset ToyBinaryDataset() {
  return DeterministicDataset(ToyBinarySchema(),
                              {{1, 1, 1}, {1, 1, 0}, {0, 1, 1}, {1, 0, 1}, {1, 0, 0}},
                              {1, 1, 0, 0, 1});
}

// if a1 and a2 then 1 (2 examples); else if a3 then 0 (2); else 1 (1).
inline RuleListModel ToyRuleList() {
  return RuleListModel{
      ToyBinarySchema(),
      {DecisionPath{{Condition::Equals(0, 1), Condition::Equals(1, 1)}, 1, {0, 2}},
       DecisionPath{{Condition::Equals(2, 1)}, 0, {2, 0}},
       DecisionPath{{}, 1, {0, 1}}}};
}

inline std::vector<Conjunction> Antecedents(const RuleListModel& m) {
  std::vector<Conjunction> out;
  for (const auto& r : m.rules) out.push_back(r.conditions);
  return out;
}

inline DatasetSchema RandomBinarySchema(std::mt19937_64& rng, std::size_t d) {
  std::vector<AttributeDomain> attrs;
  for (std::size_t k = 0; k < d; ++k) attrs.push_back(AttributeDomain::Binary("x" + std::to_string(k)));
  (void)rng;
  return DatasetSchema(std::move(attrs), AttributeDomain::Binary("y"));
}

// Rule list over binary attributes with random literal antecedents of
// width 1..max_width (contradictory antecedents allowed), all supports 0.
inline RuleListModel RandomRuleList(std::mt19937_64& rng, std::size_t d,
                                    std::size_t num_rules, std::size_t max_width) {
  RuleListModel m{RandomBinarySchema(rng, d), {}};
  std::uniform_int_distribution<std::size_t> attr(0, d - 1);
  std::uniform_int_distribution<std::size_t> width(1, max_width);
  std::bernoulli_distribution coin(0.5);
  for (std::size_t j = 0; j < num_rules; ++j) {
    std::vector<Condition> conds;
    const std::size_t w = width(rng);
    for (std::size_t c = 0; c < w; ++c) {
      const std::size_t k = attr(rng);
      conds.push_back(coin(rng) ? Condition::Equals(k, 1) : Condition::NotEquals(k, 1));
    }
    m.rules.push_back(DecisionPath{Conjunction(std::move(conds)), 0, {0, 0}});
  }
  m.rules.push_back(DecisionPath{Conjunction(), 0, {0, 0}});
  return m;
}

inline DatasetSchema RandomSchema(std::mt19937_64& rng, std::size_t d, std::size_t max_card) {
  std::uniform_int_distribution<std::size_t> card(1, max_card);
  std::uniform_int_distribution<Value> offset(-3, 20);
  std::vector<AttributeDomain> attrs;
  for (std::size_t k = 0; k < d; ++k) {
    const Value lo = offset(rng);
    attrs.push_back(AttributeDomain::Range("v" + std::to_string(k), lo,
                                           lo + static_cast<Value>(card(rng)) - 1));
  }
  return DatasetSchema(std::move(attrs), AttributeDomain("y", {0, 1, 2}));
}

namespace internal_fixtures {

inline void GrowRandomTree(std::mt19937_64& rng, const DatasetSchema& schema,
                           const Conjunction& path, int depth,
                           std::vector<DecisionPath>& out) {
  std::bernoulli_distribution stop(depth == 0 ? 0.1 : 0.35);
  std::uniform_int_distribution<std::int64_t> count(0, 4);
  if (depth >= 4 || stop(rng)) {
    const Box box = Box::Of(path, schema);
    std::vector<std::int64_t> counts = {count(rng), count(rng), count(rng)};
    if (box.IsEmpty()) counts = {0, 0, 0};
    out.push_back(DecisionPath{path, 0, counts});
    return;
  }
  std::uniform_int_distribution<std::size_t> attr(0, schema.num_attributes() - 1);
  const std::size_t k = attr(rng);
  const auto& values = schema.attribute(k).values();
  std::uniform_int_distribution<std::size_t> pick(0, values.size() - 1);
  const Value v = values[pick(rng)];
  Condition left, right;
  if (std::bernoulli_distribution(0.5)(rng)) {
    // Threshold may sit outside the domain: children are then full/empty.
    const Decimal t = Decimal::Midpoint(v, v + (std::bernoulli_distribution(0.8)(rng) ? 1 : -1));
    left = Condition::LessEq(k, t);
    right = Condition::Greater(k, t);
  } else {
    left = Condition::Equals(k, v);
    right = Condition::NotEquals(k, v);
  }
  GrowRandomTree(rng, schema, path.With(left), depth + 1, out);
  GrowRandomTree(rng, schema, path.With(right), depth + 1, out);
}

}  // namespace internal_fixtures

// A tree whose branches partition the feature space of a random schema.
inline DecisionTreeModel RandomTree(std::mt19937_64& rng, std::size_t d, std::size_t max_card) {
  DecisionTreeModel m{RandomSchema(rng, d, max_card), {}};
  internal_fixtures::GrowRandomTree(rng, m.schema, Conjunction(), 0, m.branches);
  return m;
}

inline DeterministicDataset RandomBinaryDataset(std::mt19937_64& rng, std::size_t n,
                                                std::size_t d, std::size_t num_labels = 2) {
  std::vector<AttributeDomain> attrs;
  for (std::size_t k = 0; k < d; ++k) attrs.push_back(AttributeDomain::Binary("x" + std::to_string(k)));
  std::vector<Value> label_values;
  for (std::size_t c = 0; c < num_labels; ++c) label_values.push_back(static_cast<Value>(c));
  std::bernoulli_distribution coin(0.5);
  std::uniform_int_distribution<Value> lab(0, static_cast<Value>(num_labels) - 1);
  std::vector<std::vector<Value>> rows(n);
  std::vector<Value> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < d; ++k) rows[i].push_back(coin(rng) ? 1 : 0);
    // Label loosely tied to the first attribute so learners find splits.
    labels[i] = (rows[i][0] == 1 && coin(rng)) ? 1 % static_cast<Value>(num_labels) : lab(rng);
  }
  return DeterministicDataset(DatasetSchema(std::move(attrs), AttributeDomain("y", label_values)),
                              std::move(rows), std::move(labels));
}

inline DeterministicDataset RandomDataset(std::mt19937_64& rng, std::size_t n,
                                          const DatasetSchema& schema) {
  std::vector<std::vector<Value>> rows(n);
  std::vector<Value> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& a : schema.attributes()) {
      std::uniform_int_distribution<std::size_t> pick(0, a.size() - 1);
      rows[i].push_back(a.values()[pick(rng)]);
    }
    std::uniform_int_distribution<std::size_t> pick(0, schema.label().size() - 1);
    labels[i] = schema.label().values()[pick(rng)];
  }
  return DeterministicDataset(schema, std::move(rows), std::move(labels));
}

}  // namespace recon::testing

#endif  // RECON_TESTS_FIXTURES_HPP_
