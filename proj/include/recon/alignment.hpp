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

// Alignment of reconstructed examples with original rows via minimum-cost
// bipartite matching (Hungarian algorithm).

#ifndef RECON_ALIGNMENT_HPP_
#define RECON_ALIGNMENT_HPP_

#include <algorithm>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "recon/domain.hpp"
#include "recon/error.hpp"
#include "recon/knowledge.hpp"

namespace recon {

struct AssignmentResult {
  // row_of_slot[s] is the original row matched to reconstructed slot s.
  std::vector<std::size_t> row_of_slot;
  double total_cost = 0.0;
};

// Dense square cost matrix in row-major order.
class CostMatrix {
 public:
  explicit CostMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  std::size_t size() const { return n_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }

 private:
  std::size_t n_;
  std::vector<double> data_;
};

// O(n^3) shortest-augmenting-path Hungarian algorithm with potentials.
inline AssignmentResult Assign(const CostMatrix& cost) {
  const std::size_t n = cost.size();
  AssignmentResult result;
  if (n == 0) return result;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  // 1-based arrays; column 0 is a sentinel.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> match_col(n + 1, 0), way(n + 1, 0);
  for (std::size_t row = 1; row <= n; ++row) {
    match_col[0] = row;
    std::size_t col0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<bool> used(n + 1, false);
    do {
      used[col0] = true;
      const std::size_t row0 = match_col[col0];
      double delta = kInf;
      std::size_t col1 = 0;
      for (std::size_t col = 1; col <= n; ++col) {
        if (used[col]) continue;
        const double cur = cost(row0 - 1, col - 1) - u[row0] - v[col];
        if (cur < minv[col]) {
          minv[col] = cur;
          way[col] = col0;
        }
        if (minv[col] < delta) {
          delta = minv[col];
          col1 = col;
        }
      }
      for (std::size_t col = 0; col <= n; ++col) {
        if (used[col]) {
          u[match_col[col]] += delta;
          v[col] -= delta;
        } else {
          minv[col] -= delta;
        }
      }
      col0 = col1;
    } while (match_col[col0] != 0);
    do {
      const std::size_t col1 = way[col0];
      match_col[col0] = match_col[col1];
      col0 = col1;
    } while (col0 != 0);
  }
  result.row_of_slot.assign(n, 0);
  for (std::size_t col = 1; col <= n; ++col) {
    result.row_of_slot[match_col[col] - 1] = col - 1;
  }
  for (std::size_t s = 0; s < n; ++s) result.total_cost += cost(s, result.row_of_slot[s]);
  return result;
}

// 0/1 compatibility cost between a reconstructed example and an original
// row: one unit per attribute whose value the knowledge rules out, one per
// earlier rule the row would have matched, one for a label mismatch.
inline double PairCost(const KnowledgeGroup& group, Value slot_label,
                       std::span<const Value> row, Value row_label,
                       const DatasetSchema& schema) {
  double cost = slot_label == row_label ? 0.0 : 1.0;
  if (const auto* tk = std::get_if<TreeExampleKnowledge>(&group.knowledge)) {
    for (std::size_t k = 0; k < tk->reduced_domains.size(); ++k) {
      const auto& d = tk->reduced_domains[k];
      if (std::find(d.begin(), d.end(), row[k]) == d.end()) cost += 1.0;
    }
    return cost;
  }
  const auto& rk = std::get<RuleExampleKnowledge>(group.knowledge);
  for (std::size_t k = 0; k < schema.num_attributes(); ++k) {
    for (const auto& c : rk.matched.conditions()) {
      if (c.attribute == k && !c.Accepts(row[k])) {
        cost += 1.0;
        break;
      }
    }
  }
  for (const auto& f : rk.excluded) {
    if (f.SatisfiedBy(row)) cost += 1.0;
  }
  return cost;
}

// A reconstructed example slot: the group it came from and its label.
struct Slot {
  std::size_t group = 0;
  Value label = 0;
};

// Expands each group into one slot per captured example, labelled by the
// group's class counts.
inline std::vector<Slot> ExpandSlots(const ReconstructionKnowledge& knowledge) {
  std::vector<Slot> slots;
  const auto& labels = knowledge.schema.label().values();
  for (std::size_t g = 0; g < knowledge.groups.size(); ++g) {
    const auto& counts = knowledge.groups[g].class_counts;
    for (std::size_t c = 0; c < counts.size(); ++c) {
      for (std::int64_t i = 0; i < counts[c]; ++i) slots.push_back({g, labels[c]});
    }
  }
  return slots;
}

inline AssignmentResult AlignToOriginal(const ReconstructionKnowledge& knowledge,
                                        const DeterministicDataset& original) {
  if (!(knowledge.schema == original.schema())) {
    throw Error(ErrorCode::kSchemaMismatch, "original data does not match model schema");
  }
  const auto slots = ExpandSlots(knowledge);
  if (slots.size() != original.size()) {
    throw Error(ErrorCode::kSizeMismatch,
                "model describes " + std::to_string(slots.size()) +
                    " examples but original has " + std::to_string(original.size()));
  }
  CostMatrix cost(slots.size());
  for (std::size_t s = 0; s < slots.size(); ++s) {
    for (std::size_t i = 0; i < original.size(); ++i) {
      cost(s, i) = PairCost(knowledge.groups[slots[s].group], slots[s].label,
                            original.row(i), original.label(i), knowledge.schema);
    }
  }
  return Assign(cost);
}

}  // namespace recon

#endif  // RECON_ALIGNMENT_HPP_
