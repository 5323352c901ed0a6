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

// Text model file format. A model document is a JSON object:
//
//   {
//     "model_kind": "tree" | "rulelist",
//     "schema": {"attributes": [{"name": "a1", "values": [10, 11]}, ...],
//                "label": {"name": "Label", "values": [0, 1]}},
//     "paths": [{"conditions": [{"attr": "a1", "op": "gt", "value": 11.5}],
//                "prediction": 0, "class_counts": [2, 0]}, ...]
//   }
//
// Condition values are JSON integers when integral and decimal strings
// otherwise ("11.5"), so thresholds survive a round trip exactly. Parsing
// also accepts plain JSON floats. SerializeModel emits the canonical form.

#ifndef RECON_MODEL_IO_HPP_
#define RECON_MODEL_IO_HPP_

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "recon/domain.hpp"
#include "recon/error.hpp"

namespace recon {

using Json = nlohmann::ordered_json;

namespace internal {

inline Json DomainToJson(const AttributeDomain& d) {
  return Json{{"name", d.name()}, {"values", d.values()}};
}

inline AttributeDomain DomainFromJson(const Json& j) {
  return AttributeDomain(j.at("name").get<std::string>(),
                         j.at("values").get<std::vector<Value>>());
}

inline Json DecimalToJson(const Decimal& d) {
  if (d.is_integer()) return Json(d.mantissa());
  return Json(d.ToString());
}

inline Decimal DecimalFromJson(const Json& j) {
  if (j.is_number_integer()) return Decimal(j.get<Value>());
  if (j.is_number_float()) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), j.get<double>());
    if (ec != std::errc()) throw Error(ErrorCode::kParseError, "bad number");
    return Decimal::Parse(std::string_view(buf, static_cast<std::size_t>(ptr - buf)));
  }
  if (j.is_string()) return Decimal::Parse(j.get<std::string>());
  throw Error(ErrorCode::kParseError, "condition value must be a number or string");
}

}  // namespace internal

inline Json SchemaToJson(const DatasetSchema& schema) {
  Json attrs = Json::array();
  for (const auto& a : schema.attributes()) attrs.push_back(internal::DomainToJson(a));
  return Json{{"attributes", attrs}, {"label", internal::DomainToJson(schema.label())}};
}

inline DatasetSchema SchemaFromJson(const Json& j) {
  std::vector<AttributeDomain> attrs;
  for (const auto& a : j.at("attributes")) attrs.push_back(internal::DomainFromJson(a));
  return DatasetSchema(std::move(attrs), internal::DomainFromJson(j.at("label")));
}

inline Json ConditionToJson(const Condition& c, const DatasetSchema& schema) {
  return Json{{"attr", schema.attribute(c.attribute).name()},
              {"op", std::string(OpToken(c.op))},
              {"value", internal::DecimalToJson(c.operand)}};
}

inline Condition ConditionFromJson(const Json& j, const DatasetSchema& schema) {
  const auto name = j.at("attr").get<std::string>();
  auto k = schema.IndexOf(name);
  if (!k) throw Error(ErrorCode::kSchemaMismatch, "unknown attribute '" + name + "'");
  return Condition{*k, ParseOpToken(j.at("op").get<std::string>()),
                   internal::DecimalFromJson(j.at("value"))};
}

inline Json ConjunctionToJson(const Conjunction& f, const DatasetSchema& schema) {
  Json out = Json::array();
  for (const auto& c : f.conditions()) out.push_back(ConditionToJson(c, schema));
  return out;
}

inline Json ModelToJson(const Model& model) {
  const auto& schema = SchemaOf(model);
  Json paths = Json::array();
  for (const auto& p : PathsOf(model)) {
    paths.push_back(Json{{"conditions", ConjunctionToJson(p.conditions, schema)},
                         {"prediction", p.prediction},
                         {"class_counts", p.class_counts}});
  }
  return Json{{"model_kind", std::string(ModelKindName(KindOf(model)))},
              {"schema", SchemaToJson(schema)},
              {"paths", paths}};
}

inline Model ModelFromJson(const Json& j) {
  try {
    DatasetSchema schema = SchemaFromJson(j.at("schema"));
    std::vector<DecisionPath> paths;
    for (const auto& p : j.at("paths")) {
      std::vector<Condition> conds;
      for (const auto& c : p.at("conditions")) conds.push_back(ConditionFromJson(c, schema));
      paths.push_back(DecisionPath{Conjunction(std::move(conds)),
                                   p.at("prediction").get<Value>(),
                                   p.at("class_counts").get<std::vector<std::int64_t>>()});
    }
    const auto kind = j.at("model_kind").get<std::string>();
    if (kind == "tree") {
      DecisionTreeModel m{std::move(schema), std::move(paths)};
      m.Validate();
      return m;
    }
    if (kind == "rulelist") {
      RuleListModel m{std::move(schema), std::move(paths)};
      m.Validate();
      return m;
    }
    throw Error(ErrorCode::kParseError, "unknown model_kind '" + kind + "'");
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
}

inline std::string SerializeModel(const Model& model) {
  return ModelToJson(model).dump(2) + "\n";
}

inline Model ParseModel(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
  return ModelFromJson(j);
}

inline std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes to a sibling temporary file and renames it over `path`, so readers
// never observe a partially written document.
inline void WriteFileAtomic(const std::string& path, std::string_view contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIoError, "cannot write '" + tmp + "'");
    out << contents;
    if (!out.flush()) throw Error(ErrorCode::kIoError, "write failed for '" + tmp + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::kIoError, "cannot rename onto '" + path + "': " + ec.message());
}

inline Model LoadModel(const std::string& path) { return ParseModel(ReadFile(path)); }

}  // namespace recon

#endif  // RECON_MODEL_IO_HPP_
