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

// Dataset ingestion: CSV loading, integer encoding, quantile / one-hot
// binarization with a replayable spec, and train/test splitting.

#ifndef RECON_DATAIO_HPP_
#define RECON_DATAIO_HPP_

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "recon/domain.hpp"
#include "recon/error.hpp"
#include "recon/model_io.hpp"
#include "recon/text.hpp"

namespace recon {

enum class ColumnKind { kNumeric, kCategorical };

struct RawColumn {
  std::string name;
  ColumnKind kind = ColumnKind::kCategorical;
  std::vector<std::string> cells;
  std::vector<double> numbers;  // filled for numeric columns

  bool AllIntegers() const {
    return kind == ColumnKind::kNumeric &&
           std::all_of(numbers.begin(), numbers.end(), [](double x) {
             return std::isfinite(x) && x == std::floor(x) && std::abs(x) < 9.0e15;
           });
  }
};

struct RawTable {
  std::vector<RawColumn> features;
  RawColumn label;

  std::size_t num_rows() const { return label.cells.size(); }

  const RawColumn* Find(std::string_view name) const {
    for (const auto& c : features) {
      if (c.name == name) return &c;
    }
    return nullptr;
  }
};

namespace internal {

inline std::optional<double> ParseNumber(std::string_view s) {
  s = Trim(s);
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double x = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return x;
}

inline void TypeColumn(RawColumn& col) {
  col.numbers.clear();
  for (const auto& cell : col.cells) {
    auto x = ParseNumber(cell);
    if (!x) {
      col.kind = ColumnKind::kCategorical;
      col.numbers.clear();
      return;
    }
    col.numbers.push_back(*x);
  }
  col.kind = ColumnKind::kNumeric;
}

}  // namespace internal

// Parses comma-separated text with a header row. A column is numeric iff
// every cell parses as a number.
inline RawTable ParseCsv(std::string_view text, std::string_view label_column) {
  std::vector<std::vector<std::string>> records;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!Trim(line).empty()) {
      auto fields = SplitCsvLine(line);
      for (auto& f : fields) f = std::string(Trim(f));
      records.push_back(std::move(fields));
    }
    start = end + 1;
  }
  if (records.size() < 2) {
    throw Error(ErrorCode::kEmptyFile, "CSV needs a header and at least one data row");
  }
  const auto& header = records.front();
  auto label_it = std::find(header.begin(), header.end(), label_column);
  if (label_it == header.end()) {
    throw Error(ErrorCode::kMissingLabel,
                "label column '" + std::string(label_column) + "' not in header");
  }
  const auto label_index = static_cast<std::size_t>(label_it - header.begin());
  RawTable table;
  std::vector<RawColumn> columns(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) columns[c].name = header[c];
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != header.size()) {
      throw Error(ErrorCode::kRaggedRows, "line " + std::to_string(r + 1) + " has " +
                                              std::to_string(records[r].size()) +
                                              " fields, header has " +
                                              std::to_string(header.size()));
    }
    for (std::size_t c = 0; c < header.size(); ++c) columns[c].cells.push_back(records[r][c]);
  }
  for (std::size_t c = 0; c < columns.size(); ++c) {
    internal::TypeColumn(columns[c]);
    if (c == label_index) {
      table.label = std::move(columns[c]);
    } else {
      table.features.push_back(std::move(columns[c]));
    }
  }
  return table;
}

inline RawTable LoadCsv(const std::string& path, std::string_view label_column) {
  return ParseCsv(ReadFile(path), label_column);
}

// Maps label cells to integer codes: integer labels keep their value,
// anything else is coded by sorted distinct string.
struct LabelEncoding {
  std::string name;
  std::vector<Value> values;
  std::vector<std::string> categories;  // empty for integer labels

  static LabelEncoding Fit(const RawColumn& label) {
    LabelEncoding enc;
    enc.name = label.name;
    if (label.AllIntegers()) {
      std::set<Value> distinct;
      for (double x : label.numbers) distinct.insert(static_cast<Value>(x));
      enc.values.assign(distinct.begin(), distinct.end());
    } else {
      std::set<std::string> distinct(label.cells.begin(), label.cells.end());
      enc.categories.assign(distinct.begin(), distinct.end());
      for (std::size_t i = 0; i < enc.categories.size(); ++i) {
        enc.values.push_back(static_cast<Value>(i));
      }
    }
    return enc;
  }

  Value Encode(const std::string& cell) const {
    if (categories.empty()) {
      auto x = internal::ParseNumber(cell);
      if (x && *x == std::floor(*x)) {
        const auto v = static_cast<Value>(*x);
        if (std::binary_search(values.begin(), values.end(), v)) return v;
      }
    } else {
      auto it = std::lower_bound(categories.begin(), categories.end(), cell);
      if (it != categories.end() && *it == cell) return static_cast<Value>(it - categories.begin());
    }
    throw Error(ErrorCode::kSchemaMismatch, "unknown label value '" + cell + "'");
  }

  AttributeDomain Domain() const { return AttributeDomain(name, values); }

  friend bool operator==(const LabelEncoding&, const LabelEncoding&) = default;
};

// Integer-valued feature columns used as-is. Domains come from `schema`
// when given, otherwise from the distinct observed values.
inline DeterministicDataset EncodeIntegerTable(const RawTable& table,
                                               const DatasetSchema* schema = nullptr) {
  const std::size_t n = table.num_rows();
  std::vector<AttributeDomain> attrs;
  std::vector<const RawColumn*> sources;
  if (schema != nullptr) {
    for (const auto& a : schema->attributes()) {
      const RawColumn* col = table.Find(a.name());
      if (col == nullptr) {
        throw Error(ErrorCode::kSchemaMismatch, "CSV lacks column '" + a.name() + "'");
      }
      sources.push_back(col);
    }
    attrs = schema->attributes();
  } else {
    for (const auto& col : table.features) sources.push_back(&col);
  }
  for (const RawColumn* col : sources) {
    if (!col->AllIntegers()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "column '" + col->name + "' is not integer-valued; binarize it");
    }
    if (schema == nullptr) {
      std::set<Value> distinct;
      for (double x : col->numbers) distinct.insert(static_cast<Value>(x));
      attrs.emplace_back(col->name, std::vector<Value>(distinct.begin(), distinct.end()));
    }
  }
  AttributeDomain label_domain;
  std::vector<Value> labels;
  if (schema != nullptr && schema->label().name() == table.label.name &&
      table.label.AllIntegers()) {
    label_domain = schema->label();
    for (double x : table.label.numbers) labels.push_back(static_cast<Value>(x));
  } else {
    const auto enc = LabelEncoding::Fit(table.label);
    label_domain = enc.Domain();
    for (const auto& cell : table.label.cells) labels.push_back(enc.Encode(cell));
  }
  std::vector<std::vector<Value>> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const RawColumn* col : sources) rows[i].push_back(static_cast<Value>(col->numbers[i]));
  }
  return DeterministicDataset(DatasetSchema(std::move(attrs), std::move(label_domain)),
                              std::move(rows), std::move(labels));
}

// How one source column becomes binary columns.
struct ColumnRule {
  enum class Kind { kPassthrough, kThresholds, kOneHot };

  std::string source;
  Kind kind = Kind::kPassthrough;
  std::vector<double> cuts;             // kThresholds: strictly increasing
  std::vector<std::string> categories;  // kOneHot

  std::vector<std::string> DerivedNames() const {
    std::vector<std::string> out;
    switch (kind) {
      case Kind::kPassthrough: out.push_back(source); break;
      case Kind::kThresholds:
        for (double c : cuts) out.push_back(source + "__le__" + FormatDouble(c));
        break;
      case Kind::kOneHot:
        for (const auto& v : categories) out.push_back(source + "__eq__" + v);
        break;
    }
    return out;
  }

  friend bool operator==(const ColumnRule&, const ColumnRule&) = default;
};

struct BinarizationSpec {
  std::vector<ColumnRule> columns;
  LabelEncoding label;

  std::vector<std::string> DerivedNames() const {
    std::vector<std::string> out;
    for (const auto& c : columns) {
      auto names = c.DerivedNames();
      out.insert(out.end(), names.begin(), names.end());
    }
    return out;
  }

  friend bool operator==(const BinarizationSpec&, const BinarizationSpec&) = default;
};

struct BinarizationResult {
  DeterministicDataset data;
  BinarizationSpec spec;
  std::vector<std::string> warnings;
};

// Empirical quantile of sorted data: position p*(n-1), averaging the two
// neighbouring order statistics when it falls between them.
inline double QuantileMidpoint(const std::vector<double>& sorted, double p) {
  const double h = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = static_cast<std::size_t>(std::ceil(h));
  return lo == hi ? sorted[lo] : (sorted[lo] + sorted[hi]) / 2.0;
}

// Binary table for `table` under an existing spec. Unseen categories give
// all-zero one-hot columns.
inline DeterministicDataset ApplyBinarization(const RawTable& table,
                                              const BinarizationSpec& spec) {
  const std::size_t n = table.num_rows();
  std::vector<AttributeDomain> attrs;
  for (const auto& name : spec.DerivedNames()) attrs.push_back(AttributeDomain::Binary(name));
  std::vector<std::vector<Value>> rows(n);
  for (const auto& rule : spec.columns) {
    const RawColumn* col = table.Find(rule.source);
    if (col == nullptr) {
      throw Error(ErrorCode::kSchemaMismatch, "CSV lacks column '" + rule.source + "'");
    }
    for (std::size_t i = 0; i < n; ++i) {
      switch (rule.kind) {
        case ColumnRule::Kind::kPassthrough: {
          auto x = internal::ParseNumber(col->cells[i]);
          if (!x || (*x != 0.0 && *x != 1.0)) {
            throw Error(ErrorCode::kSchemaMismatch,
                        "column '" + rule.source + "' expected 0/1, got '" + col->cells[i] + "'");
          }
          rows[i].push_back(static_cast<Value>(*x));
          break;
        }
        case ColumnRule::Kind::kThresholds: {
          auto x = internal::ParseNumber(col->cells[i]);
          if (!x) {
            throw Error(ErrorCode::kSchemaMismatch,
                        "column '" + rule.source + "' expected a number, got '" +
                            col->cells[i] + "'");
          }
          for (double c : rule.cuts) rows[i].push_back(*x <= c ? 1 : 0);
          break;
        }
        case ColumnRule::Kind::kOneHot:
          for (const auto& v : rule.categories) rows[i].push_back(col->cells[i] == v ? 1 : 0);
          break;
      }
    }
  }
  std::vector<Value> labels;
  for (const auto& cell : table.label.cells) labels.push_back(spec.label.Encode(cell));
  return DeterministicDataset(DatasetSchema(std::move(attrs), spec.label.Domain()),
                              std::move(rows), std::move(labels));
}

// Numeric columns get q-1 quantile threshold columns (duplicates and cuts
// that would give a constant column removed); 0/1 columns pass through;
// categorical columns are one-hot encoded; constant columns are dropped
// with a warning.
inline BinarizationResult Binarize(const RawTable& table, int q) {
  if (q < 2) throw Error(ErrorCode::kInvalidArgument, "quantile count must be >= 2");
  BinarizationResult result;
  result.spec.label = LabelEncoding::Fit(table.label);
  for (const auto& col : table.features) {
    ColumnRule rule;
    rule.source = col.name;
    if (col.kind == ColumnKind::kNumeric) {
      std::vector<double> sorted = col.numbers;
      std::sort(sorted.begin(), sorted.end());
      if (sorted.front() == sorted.back()) {
        result.warnings.push_back("DegenerateColumn: '" + col.name + "' is constant; dropped");
        continue;
      }
      const bool binary = std::all_of(sorted.begin(), sorted.end(),
                                      [](double x) { return x == 0.0 || x == 1.0; });
      if (binary) {
        rule.kind = ColumnRule::Kind::kPassthrough;
      } else {
        rule.kind = ColumnRule::Kind::kThresholds;
        for (int i = 1; i < q; ++i) {
          const double cut = QuantileMidpoint(sorted, static_cast<double>(i) / q);
          if (cut >= sorted.back()) continue;
          if (rule.cuts.empty() || cut > rule.cuts.back()) rule.cuts.push_back(cut);
        }
      }
    } else {
      std::set<std::string> distinct(col.cells.begin(), col.cells.end());
      if (distinct.size() == 1) {
        result.warnings.push_back("DegenerateColumn: '" + col.name + "' is constant; dropped");
        continue;
      }
      rule.kind = ColumnRule::Kind::kOneHot;
      rule.categories.assign(distinct.begin(), distinct.end());
    }
    result.spec.columns.push_back(std::move(rule));
  }
  if (result.spec.columns.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no informative feature column left");
  }
  result.data = ApplyBinarization(table, result.spec);
  return result;
}

inline Json BinarizationSpecToJson(const BinarizationSpec& spec) {
  static constexpr const char* kKinds[] = {"passthrough", "thresholds", "onehot"};
  Json cols = Json::array();
  for (const auto& c : spec.columns) {
    Json j{{"source", c.source}, {"kind", kKinds[static_cast<int>(c.kind)]}};
    if (c.kind == ColumnRule::Kind::kThresholds) j["cuts"] = c.cuts;
    if (c.kind == ColumnRule::Kind::kOneHot) j["categories"] = c.categories;
    cols.push_back(std::move(j));
  }
  return Json{{"columns", cols},
              {"label", Json{{"name", spec.label.name},
                             {"values", spec.label.values},
                             {"categories", spec.label.categories}}}};
}

inline BinarizationSpec BinarizationSpecFromJson(const Json& j) {
  try {
    BinarizationSpec spec;
    for (const auto& c : j.at("columns")) {
      ColumnRule rule;
      rule.source = c.at("source").get<std::string>();
      const auto kind = c.at("kind").get<std::string>();
      if (kind == "passthrough") {
        rule.kind = ColumnRule::Kind::kPassthrough;
      } else if (kind == "thresholds") {
        rule.kind = ColumnRule::Kind::kThresholds;
        rule.cuts = c.at("cuts").get<std::vector<double>>();
      } else if (kind == "onehot") {
        rule.kind = ColumnRule::Kind::kOneHot;
        rule.categories = c.at("categories").get<std::vector<std::string>>();
      } else {
        throw Error(ErrorCode::kParseError, "unknown column kind '" + kind + "'");
      }
      spec.columns.push_back(std::move(rule));
    }
    const auto& l = j.at("label");
    spec.label.name = l.at("name").get<std::string>();
    spec.label.values = l.at("values").get<std::vector<Value>>();
    spec.label.categories = l.at("categories").get<std::vector<std::string>>();
    return spec;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
}

// Dataset as CSV: attribute columns then the label column.
inline std::string DatasetToCsv(const DeterministicDataset& data) {
  std::vector<std::string> header;
  for (const auto& a : data.schema().attributes()) header.push_back(a.name());
  header.push_back(data.schema().label().name());
  std::string out = CsvLine(header);
  for (std::size_t i = 0; i < data.size(); ++i) {
    std::vector<std::string> fields;
    for (Value v : data.row(i)) fields.push_back(std::to_string(v));
    fields.push_back(std::to_string(data.label(i)));
    out += CsvLine(fields);
  }
  return out;
}

inline DeterministicDataset DatasetFromCsv(std::string_view text, const DatasetSchema& schema) {
  return EncodeIntegerTable(ParseCsv(text, schema.label().name()), &schema);
}

// Seeded shuffle split; both parts keep the original row order.
inline std::pair<DeterministicDataset, DeterministicDataset> Split(
    const DeterministicDataset& data, double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "train fraction must lie in (0, 1)");
  }
  const std::size_t n = data.size();
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "need at least two rows to split");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  auto n_train = static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(n)));
  n_train = std::clamp<std::size_t>(n_train, 1, n - 1);
  std::vector<std::size_t> train(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
  std::vector<std::size_t> test(order.begin() + static_cast<std::ptrdiff_t>(n_train), order.end());
  std::sort(train.begin(), train.end());
  std::sort(test.begin(), test.end());
  return {data.Subset(train), data.Subset(test)};
}

}  // namespace recon

#endif  // RECON_DATAIO_HPP_
