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

// Domain types shared by the whole library: finite attribute domains,
// datasets, conditions and conjunctions over attributes, and the two
// interpretable model families (decision trees and rule lists).

#ifndef RECON_DOMAIN_HPP_
#define RECON_DOMAIN_HPP_

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

#include "recon/error.hpp"

namespace recon {

// Attribute values are integers: raw integer features or categorical codes.
using Value = std::int64_t;

// Exact decimal number mantissa * 10^-scale. Split thresholds such as 11.5
// are held exactly so that domain membership never depends on float
// equality.
class Decimal {
 public:
  constexpr Decimal() = default;
  constexpr Decimal(Value integer) : mantissa_(integer), scale_(0) {}  // NOLINT

  static Decimal FromParts(std::int64_t mantissa, int scale) {
    Decimal d;
    d.mantissa_ = mantissa;
    d.scale_ = scale;
    d.Normalize();
    return d;
  }

  // Accepts optional sign, digits, optional fraction and optional exponent.
  static Decimal Parse(std::string_view text) {
    auto fail = [&]() -> Decimal {
      throw Error(ErrorCode::kParseError,
                  "not a decimal number: '" + std::string(text) + "'");
    };
    std::size_t pos = 0;
    bool negative = false;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
      negative = text[pos] == '-';
      ++pos;
    }
    __int128 mantissa = 0;
    int scale = 0;
    bool any_digit = false;
    bool in_fraction = false;
    for (; pos < text.size(); ++pos) {
      const char c = text[pos];
      if (c >= '0' && c <= '9') {
        mantissa = mantissa * 10 + (c - '0');
        if (mantissa > INT64_MAX) return fail();
        if (in_fraction) ++scale;
        any_digit = true;
      } else if (c == '.' && !in_fraction) {
        in_fraction = true;
      } else {
        break;
      }
    }
    if (!any_digit) return fail();
    if (pos < text.size()) {
      if (text[pos] != 'e' && text[pos] != 'E') return fail();
      int exponent = 0;
      const auto* first = text.data() + pos + 1;
      const auto* last = text.data() + text.size();
      if (first < last && *first == '+') ++first;
      auto [ptr, ec] = std::from_chars(first, last, exponent);
      if (ec != std::errc() || ptr != last) return fail();
      scale -= exponent;
    }
    while (scale < 0) {
      mantissa *= 10;
      if (mantissa > INT64_MAX) return fail();
      ++scale;
    }
    return FromParts(static_cast<std::int64_t>(negative ? -mantissa : mantissa),
                     scale);
  }

  // Exact midpoint of two integers.
  static Decimal Midpoint(Value a, Value b) {
    return FromParts((a + b) * 5, 1);
  }

  std::int64_t mantissa() const { return mantissa_; }
  int scale() const { return scale_; }
  bool is_integer() const { return scale_ == 0; }

  // Sign of (value - *this), computed exactly.
  int CompareValue(Value value) const {
    const __int128 lhs = static_cast<__int128>(value) * Pow10(scale_);
    const __int128 rhs = mantissa_;
    return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
  }

  double ToDouble() const {
    return static_cast<double>(mantissa_) / static_cast<double>(Pow10(scale_));
  }

  std::string ToString() const {
    const std::uint64_t magnitude =
        mantissa_ < 0 ? 0 - static_cast<std::uint64_t>(mantissa_)
                      : static_cast<std::uint64_t>(mantissa_);
    std::string digits = std::to_string(magnitude);
    if (scale_ > 0) {
      if (digits.size() <= static_cast<std::size_t>(scale_)) {
        digits.insert(0, static_cast<std::size_t>(scale_) - digits.size() + 1, '0');
      }
      digits.insert(digits.size() - static_cast<std::size_t>(scale_), ".");
    }
    return mantissa_ < 0 ? "-" + digits : digits;
  }

  friend bool operator==(const Decimal&, const Decimal&) = default;

 private:
  static __int128 Pow10(int exponent) {
    __int128 p = 1;
    for (int i = 0; i < exponent; ++i) p *= 10;
    return p;
  }

  void Normalize() {
    while (scale_ > 0 && mantissa_ % 10 == 0) {
      mantissa_ /= 10;
      --scale_;
    }
  }

  std::int64_t mantissa_ = 0;
  int scale_ = 0;
};

class AttributeDomain {
 public:
  AttributeDomain() = default;

  AttributeDomain(std::string name, std::vector<Value> values)
      : name_(std::move(name)), values_(std::move(values)) {
    if (values_.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "attribute '" + name_ + "' has an empty domain");
    }
    for (std::size_t i = 1; i < values_.size(); ++i) {
      if (values_[i - 1] >= values_[i]) {
        throw Error(ErrorCode::kInvalidArgument,
                    "domain of '" + name_ +
                        "' must be strictly increasing without duplicates");
      }
    }
  }

  // Inclusive integer range [lo, hi].
  static AttributeDomain Range(std::string name, Value lo, Value hi) {
    std::vector<Value> values;
    for (Value v = lo; v <= hi; ++v) values.push_back(v);
    return AttributeDomain(std::move(name), std::move(values));
  }

  static AttributeDomain Binary(std::string name) {
    return AttributeDomain(std::move(name), {0, 1});
  }

  const std::string& name() const { return name_; }
  const std::vector<Value>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  bool is_binary() const { return values_ == std::vector<Value>{0, 1}; }

  std::optional<std::size_t> IndexOf(Value v) const {
    auto it = std::lower_bound(values_.begin(), values_.end(), v);
    if (it == values_.end() || *it != v) return std::nullopt;
    return static_cast<std::size_t>(it - values_.begin());
  }

  bool Contains(Value v) const { return IndexOf(v).has_value(); }

  friend bool operator==(const AttributeDomain&,
                         const AttributeDomain&) = default;

 private:
  std::string name_;
  std::vector<Value> values_;
};

class DatasetSchema {
 public:
  DatasetSchema() = default;

  DatasetSchema(std::vector<AttributeDomain> attributes, AttributeDomain label)
      : attributes_(std::move(attributes)), label_(std::move(label)) {
    std::unordered_set<std::string> names;
    for (const auto& a : attributes_) {
      if (!names.insert(a.name()).second) {
        throw Error(ErrorCode::kInvalidArgument,
                    "duplicate attribute name '" + a.name() + "'");
      }
    }
    if (names.count(label_.name()) != 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "label name '" + label_.name() +
                      "' collides with an attribute name");
    }
  }

  const std::vector<AttributeDomain>& attributes() const { return attributes_; }
  const AttributeDomain& attribute(std::size_t k) const { return attributes_[k]; }
  const AttributeDomain& label() const { return label_; }
  std::size_t num_attributes() const { return attributes_.size(); }

  std::optional<std::size_t> IndexOf(std::string_view name) const {
    for (std::size_t k = 0; k < attributes_.size(); ++k) {
      if (attributes_[k].name() == name) return k;
    }
    return std::nullopt;
  }

  bool AllBinary() const {
    return std::all_of(attributes_.begin(), attributes_.end(),
                       [](const AttributeDomain& a) { return a.is_binary(); });
  }

  friend bool operator==(const DatasetSchema&, const DatasetSchema&) = default;

 private:
  std::vector<AttributeDomain> attributes_;
  AttributeDomain label_;
};

class DeterministicDataset {
 public:
  DeterministicDataset() = default;

  DeterministicDataset(DatasetSchema schema,
                       std::vector<std::vector<Value>> rows,
                       std::vector<Value> labels)
      : schema_(std::move(schema)),
        rows_(std::move(rows)),
        labels_(std::move(labels)) {
    if (rows_.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "dataset has no rows");
    }
    if (rows_.size() != labels_.size()) {
      throw Error(ErrorCode::kSizeMismatch, "row and label counts differ");
    }
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (rows_[i].size() != schema_.num_attributes()) {
        throw Error(ErrorCode::kRaggedRows,
                    "row " + std::to_string(i) + " has wrong width");
      }
      for (std::size_t k = 0; k < rows_[i].size(); ++k) {
        if (!schema_.attribute(k).Contains(rows_[i][k])) {
          throw Error(ErrorCode::kSchemaMismatch,
                      "row " + std::to_string(i) + ": value " +
                          std::to_string(rows_[i][k]) + " outside domain of '" +
                          schema_.attribute(k).name() + "'");
        }
      }
      if (!schema_.label().Contains(labels_[i])) {
        throw Error(ErrorCode::kSchemaMismatch,
                    "row " + std::to_string(i) + ": label outside domain");
      }
    }
  }

  const DatasetSchema& schema() const { return schema_; }
  const std::vector<std::vector<Value>>& rows() const { return rows_; }
  const std::vector<Value>& labels() const { return labels_; }
  std::span<const Value> row(std::size_t i) const { return rows_[i]; }
  Value label(std::size_t i) const { return labels_[i]; }
  std::size_t size() const { return rows_.size(); }

  DeterministicDataset Subset(std::span<const std::size_t> indices) const {
    std::vector<std::vector<Value>> rows;
    std::vector<Value> labels;
    for (std::size_t i : indices) {
      rows.push_back(rows_[i]);
      labels.push_back(labels_[i]);
    }
    return DeterministicDataset(schema_, std::move(rows), std::move(labels));
  }

  friend bool operator==(const DeterministicDataset&,
                         const DeterministicDataset&) = default;

 private:
  DatasetSchema schema_;
  std::vector<std::vector<Value>> rows_;
  std::vector<Value> labels_;
};

enum class ConditionOp { kLessEq, kGreater, kEquals, kNotEquals };

inline std::string_view OpToken(ConditionOp op) {
  switch (op) {
    case ConditionOp::kLessEq: return "le";
    case ConditionOp::kGreater: return "gt";
    case ConditionOp::kEquals: return "eq";
    case ConditionOp::kNotEquals: return "ne";
  }
  return "?";
}

inline ConditionOp ParseOpToken(std::string_view token) {
  if (token == "le") return ConditionOp::kLessEq;
  if (token == "gt") return ConditionOp::kGreater;
  if (token == "eq") return ConditionOp::kEquals;
  if (token == "ne") return ConditionOp::kNotEquals;
  throw Error(ErrorCode::kParseError,
              "unknown condition op '" + std::string(token) + "'");
}

struct Condition {
  std::size_t attribute = 0;
  ConditionOp op = ConditionOp::kEquals;
  Decimal operand;

  static Condition LessEq(std::size_t k, Decimal t) { return {k, ConditionOp::kLessEq, t}; }
  static Condition Greater(std::size_t k, Decimal t) { return {k, ConditionOp::kGreater, t}; }
  static Condition Equals(std::size_t k, Value v) { return {k, ConditionOp::kEquals, v}; }
  static Condition NotEquals(std::size_t k, Value v) { return {k, ConditionOp::kNotEquals, v}; }

  bool Accepts(Value v) const {
    const int cmp = operand.CompareValue(v);
    switch (op) {
      case ConditionOp::kLessEq: return cmp <= 0;
      case ConditionOp::kGreater: return cmp > 0;
      case ConditionOp::kEquals: return cmp == 0;
      case ConditionOp::kNotEquals: return cmp != 0;
    }
    return false;
  }

  Condition Negated() const {
    switch (op) {
      case ConditionOp::kLessEq: return {attribute, ConditionOp::kGreater, operand};
      case ConditionOp::kGreater: return {attribute, ConditionOp::kLessEq, operand};
      case ConditionOp::kEquals: return {attribute, ConditionOp::kNotEquals, operand};
      case ConditionOp::kNotEquals: return {attribute, ConditionOp::kEquals, operand};
    }
    return *this;
  }

  friend bool operator==(const Condition&, const Condition&) = default;
};

// A conjunction of conditions. The empty conjunction is the constant True.
class Conjunction {
 public:
  Conjunction() = default;
  Conjunction(std::vector<Condition> conditions)  // NOLINT
      : conditions_(std::move(conditions)) {}
  Conjunction(std::initializer_list<Condition> conditions)
      : conditions_(conditions) {}

  const std::vector<Condition>& conditions() const { return conditions_; }
  bool is_true() const { return conditions_.empty(); }
  std::size_t width() const { return conditions_.size(); }

  bool SatisfiedBy(std::span<const Value> row) const {
    return std::all_of(conditions_.begin(), conditions_.end(),
                       [&](const Condition& c) { return c.Accepts(row[c.attribute]); });
  }

  Conjunction With(const Condition& c) const {
    Conjunction out = *this;
    out.conditions_.push_back(c);
    return out;
  }

  friend bool operator==(const Conjunction&, const Conjunction&) = default;

 private:
  std::vector<Condition> conditions_;
};

// Values of `domain` accepted by every condition in `conditions`. An empty
// result signals a contradiction.
inline std::vector<Value> ReduceDomain(const AttributeDomain& domain,
                                       std::span<const Condition> conditions) {
  std::vector<Value> out;
  for (Value v : domain.values()) {
    if (std::all_of(conditions.begin(), conditions.end(),
                    [&](const Condition& c) { return c.Accepts(v); })) {
      out.push_back(v);
    }
  }
  return out;
}

inline Conjunction Conjoin(const Conjunction& a, const Conjunction& b) {
  std::vector<Condition> all = a.conditions();
  all.insert(all.end(), b.conditions().begin(), b.conditions().end());
  return Conjunction(std::move(all));
}

// Per-attribute reduced domains of a conjunction, stored as membership masks
// over the schema's domain values. Two conjunctions with the same satisfier
// set have the same Box, which makes it the canonical form for counting.
class Box {
 public:
  Box() = default;

  static Box Full(const DatasetSchema& schema) {
    Box box;
    for (const auto& a : schema.attributes()) {
      box.masks_.emplace_back(a.size(), true);
    }
    return box;
  }

  static Box Of(const Conjunction& f, const DatasetSchema& schema) {
    Box box = Full(schema);
    for (const Condition& c : f.conditions()) {
      if (c.attribute >= schema.num_attributes()) {
        throw Error(ErrorCode::kSchemaMismatch,
                    "condition references attribute index " +
                        std::to_string(c.attribute));
      }
      const auto& values = schema.attribute(c.attribute).values();
      auto& mask = box.masks_[c.attribute];
      for (std::size_t i = 0; i < values.size(); ++i) {
        if (mask[i] && !c.Accepts(values[i])) mask[i] = false;
      }
    }
    return box;
  }

  Box Intersect(const Box& other) const {
    Box out = *this;
    for (std::size_t k = 0; k < masks_.size(); ++k) {
      for (std::size_t i = 0; i < masks_[k].size(); ++i) {
        out.masks_[k][i] = masks_[k][i] && other.masks_[k][i];
      }
    }
    return out;
  }

  std::size_t num_attributes() const { return masks_.size(); }

  std::size_t Cardinality(std::size_t k) const {
    return static_cast<std::size_t>(
        std::count(masks_[k].begin(), masks_[k].end(), true));
  }

  bool IsEmpty() const {
    return std::any_of(masks_.begin(), masks_.end(), [](const auto& m) {
      return std::none_of(m.begin(), m.end(), [](bool b) { return b; });
    });
  }

  bool Contains(std::span<const Value> row, const DatasetSchema& schema) const {
    for (std::size_t k = 0; k < masks_.size(); ++k) {
      auto idx = schema.attribute(k).IndexOf(row[k]);
      if (!idx || !masks_[k][*idx]) return false;
    }
    return true;
  }

  std::vector<Value> Values(std::size_t k, const DatasetSchema& schema) const {
    std::vector<Value> out;
    const auto& values = schema.attribute(k).values();
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (masks_[k][i]) out.push_back(values[i]);
    }
    return out;
  }

  const std::vector<std::vector<bool>>& masks() const { return masks_; }

  std::size_t Hash() const {
    std::size_t h = masks_.size();
    std::hash<std::vector<bool>> hasher;
    for (const auto& m : masks_) h = h * 1000003u ^ hasher(m);
    return h;
  }

  friend bool operator==(const Box&, const Box&) = default;

 private:
  std::vector<std::vector<bool>> masks_;
};

// One decision path: a tree branch or a rule, with its per-label supports.
// class_counts is indexed by position in the label domain.
struct DecisionPath {
  Conjunction conditions;
  Value prediction = 0;
  std::vector<std::int64_t> class_counts;

  std::int64_t support() const {
    std::int64_t s = 0;
    for (auto c : class_counts) s += c;
    return s;
  }

  friend bool operator==(const DecisionPath&, const DecisionPath&) = default;
};

enum class ModelKind { kTree, kRuleList };

inline std::string_view ModelKindName(ModelKind kind) {
  return kind == ModelKind::kTree ? "tree" : "rulelist";
}

namespace internal {

inline void ValidatePaths(const DatasetSchema& schema,
                          const std::vector<DecisionPath>& paths,
                          std::string_view what) {
  if (paths.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(what) + " must have at least one path");
  }
  for (const auto& p : paths) {
    if (p.class_counts.size() != schema.label().size()) {
      throw Error(ErrorCode::kSchemaMismatch,
                  "class_counts length differs from label domain size");
    }
    if (!schema.label().Contains(p.prediction)) {
      throw Error(ErrorCode::kSchemaMismatch, "prediction outside label domain");
    }
    for (auto c : p.class_counts) {
      if (c < 0) throw Error(ErrorCode::kInvalidArgument, "negative class count");
    }
    for (const auto& c : p.conditions.conditions()) {
      if (c.attribute >= schema.num_attributes()) {
        throw Error(ErrorCode::kSchemaMismatch, "condition attribute out of range");
      }
    }
  }
}

}  // namespace internal

struct DecisionTreeModel {
  DatasetSchema schema;
  std::vector<DecisionPath> branches;

  static constexpr ModelKind kind = ModelKind::kTree;

  void Validate() const { internal::ValidatePaths(schema, branches, "tree"); }

  std::int64_t num_examples() const {
    std::int64_t n = 0;
    for (const auto& b : branches) n += b.support();
    return n;
  }

  // Internal nodes of a binary tree with r leaves.
  std::size_t size() const { return branches.empty() ? 0 : branches.size() - 1; }

  // Index of the branch whose path the row satisfies, if any.
  std::optional<std::size_t> Route(std::span<const Value> row) const {
    for (std::size_t j = 0; j < branches.size(); ++j) {
      if (branches[j].conditions.SatisfiedBy(row)) return j;
    }
    return std::nullopt;
  }

  friend bool operator==(const DecisionTreeModel&,
                         const DecisionTreeModel&) = default;
};

struct RuleListModel {
  DatasetSchema schema;
  std::vector<DecisionPath> rules;

  static constexpr ModelKind kind = ModelKind::kRuleList;

  void Validate() const {
    internal::ValidatePaths(schema, rules, "rule list");
    if (!rules.back().conditions.is_true()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "last rule of a rule list must be the default (True) rule");
    }
  }

  std::int64_t num_examples() const {
    std::int64_t n = 0;
    for (const auto& r : rules) n += r.support();
    return n;
  }

  // Rule count excluding the default rule.
  std::size_t size() const { return rules.empty() ? 0 : rules.size() - 1; }

  std::optional<std::size_t> Route(std::span<const Value> row) const {
    for (std::size_t j = 0; j < rules.size(); ++j) {
      if (rules[j].conditions.SatisfiedBy(row)) return j;
    }
    return std::nullopt;
  }

  friend bool operator==(const RuleListModel&, const RuleListModel&) = default;
};

using Model = std::variant<DecisionTreeModel, RuleListModel>;

inline const DatasetSchema& SchemaOf(const Model& model) {
  return std::visit([](const auto& m) -> const DatasetSchema& { return m.schema; },
                    model);
}

inline const std::vector<DecisionPath>& PathsOf(const Model& model) {
  if (const auto* t = std::get_if<DecisionTreeModel>(&model)) return t->branches;
  return std::get<RuleListModel>(model).rules;
}

inline ModelKind KindOf(const Model& model) {
  return std::holds_alternative<DecisionTreeModel>(model) ? ModelKind::kTree
                                                          : ModelKind::kRuleList;
}

// One candidate feature vector per example row.
struct PossibleWorld {
  std::vector<std::vector<Value>> rows;
};

}  // namespace recon

#endif  // RECON_DOMAIN_HPP_
