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

// Reconstruction attacks: turn a trained model into per-path knowledge
// about its training set.

#ifndef RECON_RECONSTRUCTION_HPP_
#define RECON_RECONSTRUCTION_HPP_

#include <sstream>
#include <string>
#include <vector>

#include "recon/counting.hpp"
#include "recon/domain.hpp"
#include "recon/error.hpp"
#include "recon/knowledge.hpp"

namespace recon {

// Follows each branch and reduces every attribute's domain by the splits
// along it.
inline ReconstructionKnowledge ReconstructTree(const DecisionTreeModel& model) {
  model.Validate();
  ReconstructionKnowledge out;
  out.kind = ModelKind::kTree;
  out.schema = model.schema;
  for (std::size_t j = 0; j < model.branches.size(); ++j) {
    const auto& branch = model.branches[j];
    const Box box = Box::Of(branch.conditions, model.schema);
    TreeExampleKnowledge tk;
    for (std::size_t k = 0; k < model.schema.num_attributes(); ++k) {
      tk.reduced_domains.push_back(box.Values(k, model.schema));
    }
    if (branch.support() > 0 && box.IsEmpty()) {
      throw Error(ErrorCode::kContradictoryPath,
                  "branch " + std::to_string(j) + " has support " +
                      std::to_string(branch.support()) + " but an empty domain");
    }
    out.groups.push_back(KnowledgeGroup{j, branch.support(), branch.prediction,
                                        branch.class_counts, std::move(tk)});
  }
  return out;
}

// Rule j knows its own antecedent holds and every earlier one fails.
inline ReconstructionKnowledge ReconstructRuleList(const RuleListModel& model) {
  model.Validate();
  ReconstructionKnowledge out;
  out.kind = ModelKind::kRuleList;
  out.schema = model.schema;
  for (const auto& r : model.rules) out.antecedents.push_back(r.conditions);
  CaptMemo memo;
  const auto capts = CaptAllRules(out.antecedents, model.schema, &memo);
  for (std::size_t j = 0; j < model.rules.size(); ++j) {
    const auto& rule = model.rules[j];
    if (rule.support() > 0 && capts[j] == 0) {
      throw Error(ErrorCode::kEmptyCapture,
                  "rule " + std::to_string(j) + " has support " +
                      std::to_string(rule.support()) +
                      " but captures no feature vector");
    }
    RuleExampleKnowledge rk{
        rule.conditions,
        std::vector<Conjunction>(out.antecedents.begin(),
                                 out.antecedents.begin() + static_cast<std::ptrdiff_t>(j))};
    out.groups.push_back(KnowledgeGroup{j, rule.support(), rule.prediction,
                                        rule.class_counts, std::move(rk)});
  }
  return out;
}

inline ReconstructionKnowledge Reconstruct(const Model& model) {
  if (const auto* t = std::get_if<DecisionTreeModel>(&model)) return ReconstructTree(*t);
  return ReconstructRuleList(std::get<RuleListModel>(model));
}

// Knowledge that pins every row to its true values (one group per row).
inline ReconstructionKnowledge ExactKnowledge(const DeterministicDataset& data) {
  ReconstructionKnowledge out;
  out.kind = ModelKind::kTree;
  out.schema = data.schema();
  for (std::size_t i = 0; i < data.size(); ++i) {
    TreeExampleKnowledge tk;
    for (Value v : data.row(i)) tk.reduced_domains.push_back({v});
    std::vector<std::int64_t> counts(data.schema().label().size(), 0);
    counts[*data.schema().label().IndexOf(data.label(i))] = 1;
    out.groups.push_back(KnowledgeGroup{i, 1, data.label(i), counts, std::move(tk)});
  }
  return out;
}

// Knowledge that says nothing: n examples, every domain full.
inline ReconstructionKnowledge NoKnowledge(const DatasetSchema& schema, std::int64_t n) {
  ReconstructionKnowledge out;
  out.kind = ModelKind::kTree;
  out.schema = schema;
  TreeExampleKnowledge tk;
  for (const auto& a : schema.attributes()) tk.reduced_domains.push_back(a.values());
  std::vector<std::int64_t> counts(schema.label().size(), 0);
  counts[0] = n;
  out.groups.push_back(KnowledgeGroup{0, n, schema.label().values()[0], counts, std::move(tk)});
  return out;
}

namespace internal {

inline std::string RenderCondition(const Condition& c, const DatasetSchema& schema) {
  static constexpr const char* kSymbols[] = {"<=", ">", "=", "!="};
  return schema.attribute(c.attribute).name() + " " +
         kSymbols[static_cast<int>(c.op)] + " " + c.operand.ToString();
}

inline std::string RenderConjunction(const Conjunction& f, const DatasetSchema& schema) {
  if (f.is_true()) return "True";
  std::string out;
  for (std::size_t i = 0; i < f.conditions().size(); ++i) {
    if (i > 0) out += " AND ";
    out += RenderCondition(f.conditions()[i], schema);
  }
  return out;
}

}  // namespace internal

// Human-readable knowledge for one group, e.g.
//   "a1 in {10, 11}; a2 in {0, 1}; a3 in {2, 3}"
//   "a3 = 1; NOT (a1 = 1 AND a2 = 1)"
inline std::string DescribeGroup(const KnowledgeGroup& group, const DatasetSchema& schema) {
  std::ostringstream os;
  if (const auto* tk = std::get_if<TreeExampleKnowledge>(&group.knowledge)) {
    for (std::size_t k = 0; k < tk->reduced_domains.size(); ++k) {
      if (k > 0) os << "; ";
      os << schema.attribute(k).name() << " in {";
      const auto& d = tk->reduced_domains[k];
      for (std::size_t i = 0; i < d.size(); ++i) os << (i ? ", " : "") << d[i];
      os << "}";
    }
    return os.str();
  }
  const auto& rk = std::get<RuleExampleKnowledge>(group.knowledge);
  os << internal::RenderConjunction(rk.matched, schema);
  for (const auto& f : rk.excluded) {
    os << "; NOT (" << internal::RenderConjunction(f, schema) << ")";
  }
  return os.str();
}

}  // namespace recon

#endif  // RECON_RECONSTRUCTION_HPP_
