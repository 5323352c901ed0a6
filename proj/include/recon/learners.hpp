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

// Greedy learners for decision trees (CART-style) and rule lists, plus
// helpers to route data through a model.
//
// Both learners are deterministic: candidate splits are scanned by
// ascending attribute index (then ascending threshold, or positive literal
// before negative) and a candidate only replaces the incumbent when it is
// strictly better. The split chosen at a node never depends on max_depth,
// so a deeper budget only extends a shallower model.

#ifndef RECON_LEARNERS_HPP_
#define RECON_LEARNERS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "recon/domain.hpp"
#include "recon/error.hpp"

namespace recon {

struct LearnerConfig {
  int max_depth = 3;
  double min_support = 0.05;
  std::uint64_t seed = 0;

  void Validate() const {
    if (max_depth < 1) throw Error(ErrorCode::kInvalidArgument, "max_depth must be >= 1");
    if (!(min_support > 0.0 && min_support <= 0.5)) {
      throw Error(ErrorCode::kInvalidArgument, "min_support must lie in (0, 0.5]");
    }
  }

  // Minimum number of examples on each side of a split.
  std::size_t MinCount(std::size_t n) const {
    const double raw = std::ceil(min_support * static_cast<double>(n) - 1e-9);
    return std::max<std::size_t>(1, static_cast<std::size_t>(raw));
  }
};

inline double Gini(std::span<const std::int64_t> counts) {
  std::int64_t total = 0;
  for (auto c : counts) {
    if (c < 0) throw Error(ErrorCode::kInvalidArgument, "negative class count");
    total += c;
  }
  if (total == 0) throw Error(ErrorCode::kInvalidArgument, "gini of an empty node");
  double sum_sq = 0.0;
  for (auto c : counts) {
    const double p = static_cast<double>(c) / static_cast<double>(total);
    sum_sq += p * p;
  }
  return 1.0 - sum_sq;
}

namespace internal {

constexpr double kGiniTolerance = 1e-12;

inline std::vector<std::int64_t> ClassCounts(const DeterministicDataset& data,
                                             std::span<const std::size_t> rows) {
  std::vector<std::int64_t> counts(data.schema().label().size(), 0);
  for (std::size_t i : rows) ++counts[*data.schema().label().IndexOf(data.label(i))];
  return counts;
}

inline Value Majority(const DatasetSchema& schema, const std::vector<std::int64_t>& counts) {
  std::size_t best = 0;
  for (std::size_t c = 1; c < counts.size(); ++c) {
    if (counts[c] > counts[best]) best = c;
  }
  return schema.label().values()[best];
}

inline bool IsPure(const std::vector<std::int64_t>& counts) {
  return std::count_if(counts.begin(), counts.end(), [](auto c) { return c > 0; }) <= 1;
}

inline double WeightedGini(const std::vector<std::int64_t>& left,
                           const std::vector<std::int64_t>& right) {
  std::int64_t nl = 0, nr = 0;
  for (auto c : left) nl += c;
  for (auto c : right) nr += c;
  return (static_cast<double>(nl) * Gini(left) + static_cast<double>(nr) * Gini(right)) /
         static_cast<double>(nl + nr);
}

struct SplitChoice {
  Condition left;
  Condition right;
  double score = 0.0;
};

class TreeGrower {
 public:
  TreeGrower(const DeterministicDataset& data, const LearnerConfig& cfg)
      : data_(data), cfg_(cfg), min_count_(cfg.MinCount(data.size())) {}

  std::vector<DecisionPath> Grow() {
    std::vector<std::size_t> all(data_.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    GrowNode(all, Conjunction(), 0);
    return std::move(branches_);
  }

 private:
  void GrowNode(const std::vector<std::size_t>& rows, const Conjunction& path, int depth) {
    const auto counts = ClassCounts(data_, rows);
    std::optional<SplitChoice> split;
    if (depth < cfg_.max_depth && !IsPure(counts) && rows.size() >= 2 * min_count_) {
      split = BestSplit(rows);
    }
    if (!split) {
      branches_.push_back(DecisionPath{path, Majority(data_.schema(), counts), counts});
      return;
    }
    std::vector<std::size_t> left, right;
    for (std::size_t i : rows) {
      (split->left.Accepts(data_.row(i)[split->left.attribute]) ? left : right).push_back(i);
    }
    GrowNode(left, path.With(split->left), depth + 1);
    GrowNode(right, path.With(split->right), depth + 1);
  }

  // Lowest weighted Gini among admissible splits, even when it does not
  // beat the parent; ties keep the earliest attribute and threshold.
  std::optional<SplitChoice> BestSplit(const std::vector<std::size_t>& rows) const {
    std::optional<SplitChoice> best;
    const auto& schema = data_.schema();
    const std::size_t num_labels = schema.label().size();
    for (std::size_t k = 0; k < schema.num_attributes(); ++k) {
      std::vector<std::size_t> order = rows;
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return data_.row(a)[k] < data_.row(b)[k];
      });
      std::vector<std::int64_t> left(num_labels, 0);
      auto right = ClassCounts(data_, rows);
      for (std::size_t pos = 0; pos + 1 < order.size(); ++pos) {
        const std::size_t label = *schema.label().IndexOf(data_.label(order[pos]));
        ++left[label];
        --right[label];
        const Value lo = data_.row(order[pos])[k];
        const Value hi = data_.row(order[pos + 1])[k];
        if (lo == hi) continue;
        const std::size_t nl = pos + 1, nr = order.size() - nl;
        if (nl < min_count_ || nr < min_count_) continue;
        const double score = WeightedGini(left, right);
        if (!best || score < best->score - kGiniTolerance) {
          best = SplitChoice{LeftCondition(k, lo, hi), RightCondition(k, lo, hi), score};
        }
      }
    }
    return best;
  }

  // Two-valued domains split by equality; others by a midpoint threshold.
  Condition LeftCondition(std::size_t k, Value lo, Value hi) const {
    if (data_.schema().attribute(k).size() == 2) return Condition::Equals(k, lo);
    return Condition::LessEq(k, Decimal::Midpoint(lo, hi));
  }
  Condition RightCondition(std::size_t k, Value lo, Value hi) const {
    if (data_.schema().attribute(k).size() == 2) return Condition::Equals(k, hi);
    return Condition::Greater(k, Decimal::Midpoint(lo, hi));
  }

  const DeterministicDataset& data_;
  const LearnerConfig& cfg_;
  std::size_t min_count_;
  std::vector<DecisionPath> branches_;
};

}  // namespace internal

inline DecisionTreeModel TrainGreedyTree(const DeterministicDataset& data,
                                         const LearnerConfig& cfg) {
  cfg.Validate();
  if (data.schema().num_attributes() == 0) {
    throw Error(ErrorCode::kInvalidArgument, "dataset has no attributes");
  }
  internal::TreeGrower grower(data, cfg);
  return DecisionTreeModel{data.schema(), grower.Grow()};
}

// Each level picks the single literal (a_k = 1 or a_k = 0) whose
// (captured, remaining) split has the lowest weighted Gini impurity, with
// both sides holding at least MinCount examples.
inline RuleListModel TrainGreedyRuleList(const DeterministicDataset& data,
                                         const LearnerConfig& cfg) {
  cfg.Validate();
  const auto& schema = data.schema();
  if (!schema.AllBinary()) {
    throw Error(ErrorCode::kNonBinarySchema, "rule lists need {0,1} attributes");
  }
  const std::size_t min_count = cfg.MinCount(data.size());
  std::vector<std::size_t> remaining(data.size());
  for (std::size_t i = 0; i < remaining.size(); ++i) remaining[i] = i;

  RuleListModel model{schema, {}};
  for (int level = 0; level < cfg.max_depth; ++level) {
    const auto counts = internal::ClassCounts(data, remaining);
    if (internal::IsPure(counts) || remaining.size() < 2 * min_count) break;
    std::optional<Condition> best;
    double best_score = 0.0;
    for (std::size_t k = 0; k < schema.num_attributes(); ++k) {
      for (Value literal : {Value{1}, Value{0}}) {
        const Condition c = Condition::Equals(k, literal);
        std::vector<std::size_t> cap, rest;
        for (std::size_t i : remaining) (c.Accepts(data.row(i)[k]) ? cap : rest).push_back(i);
        if (cap.size() < min_count || rest.size() < min_count) continue;
        const double score = internal::WeightedGini(internal::ClassCounts(data, cap),
                                                    internal::ClassCounts(data, rest));
        if (!best || score < best_score - internal::kGiniTolerance) {
          best = c;
          best_score = score;
        }
      }
    }
    if (!best) break;
    std::vector<std::size_t> cap, rest;
    for (std::size_t i : remaining) {
      (best->Accepts(data.row(i)[best->attribute]) ? cap : rest).push_back(i);
    }
    const auto cap_counts = internal::ClassCounts(data, cap);
    model.rules.push_back(DecisionPath{Conjunction{*best},
                                       internal::Majority(schema, cap_counts), cap_counts});
    remaining = std::move(rest);
  }
  const auto rest_counts = internal::ClassCounts(data, remaining);
  model.rules.push_back(
      DecisionPath{Conjunction(), internal::Majority(schema, rest_counts), rest_counts});
  return model;
}

// Recomputes every path's class counts by routing the rows of `data`.
template <typename M>
M AttachSupports(M model, const DeterministicDataset& data) {
  if (!(model.schema == data.schema())) {
    throw Error(ErrorCode::kSchemaMismatch, "model and data schemas differ");
  }
  auto& paths = [&]() -> std::vector<DecisionPath>& {
    if constexpr (M::kind == ModelKind::kTree) return model.branches;
    else return model.rules;
  }();
  for (auto& p : paths) p.class_counts.assign(data.schema().label().size(), 0);
  for (std::size_t i = 0; i < data.size(); ++i) {
    auto j = model.Route(data.row(i));
    if (!j) {
      throw Error(ErrorCode::kSchemaMismatch,
                  "row " + std::to_string(i) + " is not captured by any path");
    }
    ++paths[*j].class_counts[*data.schema().label().IndexOf(data.label(i))];
  }
  return model;
}

inline Model AttachSupports(const Model& model, const DeterministicDataset& data) {
  return std::visit([&](const auto& m) -> Model { return AttachSupports(m, data); }, model);
}

inline std::optional<Value> Predict(const Model& model, std::span<const Value> row) {
  return std::visit(
      [&](const auto& m) -> std::optional<Value> {
        const auto& paths = [&]() -> const std::vector<DecisionPath>& {
          if constexpr (std::decay_t<decltype(m)>::kind == ModelKind::kTree) return m.branches;
          else return m.rules;
        }();
        auto j = m.Route(row);
        if (!j) return std::nullopt;
        return paths[*j].prediction;
      },
      model);
}

inline double Accuracy(const Model& model, const DeterministicDataset& data) {
  if (data.size() == 0) return 0.0;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    auto p = Predict(model, data.row(i));
    if (p && *p == data.label(i)) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(data.size());
}

}  // namespace recon

#endif  // RECON_LEARNERS_HPP_
