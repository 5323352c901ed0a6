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

// Exact counting of the feature vectors compatible with a decision path.
//
// For a conjunction f, Num(f) is the product of its reduced domain sizes.
// For rule j of a rule list the count of vectors the rule actually captures
// is
//
//   Capt(f_j)      = Num(f_j) - sum_{l<j} Capt(f_l, f_j)
//   Capt(f_l, g)   = Num(f_l & g) - sum_{h<l} Capt(f_h, f_l & g)
//
// where Capt(f_l, g) counts vectors satisfying g that rule l captures before
// any later rule gets a chance. Indices are 0-based throughout.

#ifndef RECON_COUNTING_HPP_
#define RECON_COUNTING_HPP_

#include <atomic>
#include <cstdint>
#include <mutex>
#include <shared_mutex>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "recon/domain.hpp"
#include "recon/error.hpp"
#include "recon/knowledge.hpp"

namespace recon {

using WorldCount = boost::multiprecision::cpp_int;

inline WorldCount Num(const Box& box) {
  WorldCount count = 1;
  for (std::size_t k = 0; k < box.num_attributes(); ++k) {
    const std::size_t c = box.Cardinality(k);
    if (c == 0) return 0;
    count *= c;
  }
  return count;
}

inline WorldCount Num(const Conjunction& f, const DatasetSchema& schema) {
  return Num(Box::Of(f, schema));
}

// Total number of feature vectors in the schema.
inline WorldCount UniverseSize(const DatasetSchema& schema) {
  return Num(Box::Full(schema));
}

// Memo for Capt(f_l, g) queries, keyed by (l, reduced domains of g). A memo
// belongs to a single antecedent list; do not share one across rule lists.
// Lookups and inserts are thread-safe: concurrent misses may compute the
// same entry twice but the first stored value wins.
class CaptMemo {
 public:
  CaptMemo() = default;
  CaptMemo(const CaptMemo&) = delete;
  CaptMemo& operator=(const CaptMemo&) = delete;

  std::optional<WorldCount> Find(std::size_t l, const Box& g) const {
    std::shared_lock lock(mutex_);
    auto it = cache_.find(Key{l, g});
    if (it == cache_.end()) {
      misses_.fetch_add(1, std::memory_order_relaxed);
      return std::nullopt;
    }
    hits_.fetch_add(1, std::memory_order_relaxed);
    return it->second;
  }

  WorldCount Insert(std::size_t l, const Box& g, WorldCount value) {
    std::unique_lock lock(mutex_);
    auto [it, inserted] = cache_.try_emplace(Key{l, g}, std::move(value));
    return it->second;
  }

  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return cache_.size();
  }
  std::uint64_t hits() const { return hits_.load(); }
  std::uint64_t misses() const { return misses_.load(); }

 private:
  struct Key {
    std::size_t rule;
    Box conjunction;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return k.conjunction.Hash() * 31u + k.rule;
    }
  };

  mutable std::shared_mutex mutex_;
  std::unordered_map<Key, WorldCount, KeyHash> cache_;
  mutable std::atomic<std::uint64_t> hits_{0};
  mutable std::atomic<std::uint64_t> misses_{0};
};

namespace internal {

inline std::vector<Box> AntecedentBoxes(std::span<const Conjunction> rules,
                                        const DatasetSchema& schema) {
  std::vector<Box> boxes;
  boxes.reserve(rules.size());
  for (const auto& f : rules) boxes.push_back(Box::Of(f, schema));
  return boxes;
}

// Capt(f_l, g) over precomputed antecedent boxes.
inline WorldCount CaptWithin(std::size_t l, const Box& g,
                             std::span<const Box> boxes, CaptMemo* memo) {
  const Box overlap = boxes[l].Intersect(g);
  WorldCount count = Num(overlap);
  if (count == 0) return 0;
  if (memo != nullptr) {
    if (auto hit = memo->Find(l, overlap)) return *std::move(hit);
  }
  WorldCount result = count;
  for (std::size_t h = 0; h < l; ++h) {
    result -= CaptWithin(h, overlap, boxes, memo);
    if (result == 0) break;
  }
  if (memo != nullptr) return memo->Insert(l, overlap, std::move(result));
  return result;
}

inline void CheckRuleIndex(std::size_t l, std::size_t j, std::size_t size) {
  if (l > j || j >= size) {
    throw Error(ErrorCode::kInvalidArgument,
                "capt indices must satisfy l <= j < number of rules");
  }
}

}  // namespace internal

// Number of vectors that rule j could capture but rule l captures first
// (l <= j). CaptPair(j, j) is the count rule j actually captures.
inline WorldCount CaptPair(std::size_t l, std::size_t j,
                           std::span<const Conjunction> rules,
                           const DatasetSchema& schema, CaptMemo* memo = nullptr) {
  internal::CheckRuleIndex(l, j, rules.size());
  const auto boxes = internal::AntecedentBoxes(rules, schema);
  if (l == j) {
    WorldCount result = Num(boxes[j]);
    for (std::size_t h = 0; h < j && result != 0; ++h) {
      result -= internal::CaptWithin(h, boxes[j], boxes, memo);
    }
    return result;
  }
  return internal::CaptWithin(l, boxes[j], boxes, memo);
}

// Number of vectors captured by rule j within the rule list.
inline WorldCount CaptRule(std::size_t j, std::span<const Conjunction> rules,
                           const DatasetSchema& schema, CaptMemo* memo = nullptr) {
  return CaptPair(j, j, rules, schema, memo);
}

// Capture counts for every rule, sharing one set of boxes and one memo.
inline std::vector<WorldCount> CaptAllRules(std::span<const Conjunction> rules,
                                            const DatasetSchema& schema,
                                            CaptMemo* memo = nullptr) {
  const auto boxes = internal::AntecedentBoxes(rules, schema);
  std::vector<WorldCount> out;
  out.reserve(rules.size());
  for (std::size_t j = 0; j < rules.size(); ++j) {
    WorldCount result = Num(boxes[j]);
    for (std::size_t l = 0; l < j && result != 0; ++l) {
      result -= internal::CaptWithin(l, boxes[j], boxes, memo);
    }
    out.push_back(std::move(result));
  }
  return out;
}

// |Pi_i| for every example of each group: Num(path) for tree groups,
// Capt(rule) for rule-list groups.
inline std::vector<WorldCount> WorldsPerExample(const ReconstructionKnowledge& knowledge) {
  std::vector<WorldCount> out;
  out.reserve(knowledge.groups.size());
  if (knowledge.kind == ModelKind::kRuleList) {
    CaptMemo memo;
    const auto capts = CaptAllRules(knowledge.antecedents, knowledge.schema, &memo);
    for (const auto& g : knowledge.groups) out.push_back(capts.at(g.path_index));
  } else {
    for (const auto& g : knowledge.groups) {
      const auto& tk = std::get<TreeExampleKnowledge>(g.knowledge);
      WorldCount count = 1;
      for (const auto& d : tk.reduced_domains) count *= d.size();
      out.push_back(std::move(count));
    }
  }
  return out;
}

struct OracleOptions {
  WorldCount ceiling = WorldCount(1) << 22;
  bool collect_vectors = true;
};

struct OracleResult {
  WorldCount count = 0;
  std::vector<std::vector<Value>> vectors;
};

// Exhaustive enumeration of every attribute-value combination, filtered by
// the group's knowledge predicate. Independent of the closed forms above.
inline OracleResult OracleWorlds(const KnowledgeGroup& group,
                                 const DatasetSchema& schema,
                                 const OracleOptions& options = {}) {
  WorldCount total = 1;
  for (const auto& a : schema.attributes()) total *= a.size();
  if (total > options.ceiling) {
    throw Error(ErrorCode::kCeilingExceeded,
                "schema has " + total.str() + " vectors, ceiling is " +
                    options.ceiling.str());
  }
  OracleResult result;
  const std::size_t d = schema.num_attributes();
  std::vector<std::size_t> digits(d, 0);
  std::vector<Value> row(d);
  std::uint64_t count = 0;
  const auto total_u = total.convert_to<std::uint64_t>();
  for (std::uint64_t idx = 0; idx < total_u; ++idx) {
    for (std::size_t k = 0; k < d; ++k) row[k] = schema.attribute(k).values()[digits[k]];
    if (group.Admits(row)) {
      ++count;
      if (options.collect_vectors) result.vectors.push_back(row);
    }
    for (std::size_t k = d; k-- > 0;) {
      if (++digits[k] < schema.attribute(k).size()) break;
      digits[k] = 0;
    }
  }
  result.count = count;
  return result;
}

}  // namespace recon

#endif  // RECON_COUNTING_HPP_
