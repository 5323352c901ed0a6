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

// Per-example knowledge extracted from a model. Knowledge is stored per
// decision path with a multiplicity (the path's support), never per
// physical row: examples captured by the same path are indistinguishable.

#ifndef RECON_KNOWLEDGE_HPP_
#define RECON_KNOWLEDGE_HPP_

#include <algorithm>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "recon/domain.hpp"

namespace recon {

// Tree-style knowledge: an independent reduced domain per attribute.
struct TreeExampleKnowledge {
  std::vector<std::vector<Value>> reduced_domains;

  bool Admits(std::span<const Value> row) const {
    for (std::size_t k = 0; k < reduced_domains.size(); ++k) {
      const auto& d = reduced_domains[k];
      if (std::find(d.begin(), d.end(), row[k]) == d.end()) return false;
    }
    return true;
  }
};

// Rule-list knowledge: the capturing antecedent holds and none of the
// earlier antecedents does.
struct RuleExampleKnowledge {
  Conjunction matched;
  std::vector<Conjunction> excluded;

  bool Admits(std::span<const Value> row) const {
    if (!matched.SatisfiedBy(row)) return false;
    return std::none_of(excluded.begin(), excluded.end(),
                        [&](const Conjunction& f) { return f.SatisfiedBy(row); });
  }
};

struct KnowledgeGroup {
  std::size_t path_index = 0;
  std::int64_t multiplicity = 0;
  Value prediction = 0;
  std::vector<std::int64_t> class_counts;
  std::variant<TreeExampleKnowledge, RuleExampleKnowledge> knowledge;

  bool Admits(std::span<const Value> row) const {
    return std::visit([&](const auto& k) { return k.Admits(row); }, knowledge);
  }
};

struct ReconstructionKnowledge {
  ModelKind kind = ModelKind::kTree;
  DatasetSchema schema;
  std::vector<KnowledgeGroup> groups;
  // Ordered rule antecedents; empty for trees.
  std::vector<Conjunction> antecedents;

  std::int64_t num_examples() const {
    std::int64_t n = 0;
    for (const auto& g : groups) n += g.multiplicity;
    return n;
  }
};

}  // namespace recon

#endif  // RECON_KNOWLEDGE_HPP_
