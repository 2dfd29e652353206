//
// Copyright 2026 The bncsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "bnc/config.h"

#include <fstream>

#include "bnc/synthetic.h"

namespace bnc {
namespace {

std::vector<std::string> SplitOn(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : text) {
    if (c == sep) {
      parts.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  parts.push_back(current);
  return parts;
}

}  // namespace

Json LoadConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) ThrowError(ErrorKind::kConfig, "cannot open config '" + path + "'");
  Json config;
  try {
    in >> config;
  } catch (const Json::parse_error& e) {
    ThrowError(ErrorKind::kConfig, "config '" + path + "': " + e.what());
  }
  return config;
}

Dataset BuildDataset(const Json& spec) {
  if (!spec.is_object() || !spec.contains("kind")) {
    ThrowError(ErrorKind::kConfig, "dataset spec needs a \"kind\"");
  }
  std::string kind = spec["kind"].get<std::string>();
  if (kind == "normal-fixture") {
    return NormalFixtureDataset(spec.value("attribute", std::string("value")));
  }
  if (kind == "age-standin") {
    return AgeStandinDataset(spec.value("attribute", std::string("age")));
  }
  if (kind == "synthetic") {
    SyntheticParams params;
    params.seed = spec.value("seed", params.seed);
    params.n = spec.value("n", params.n);
    params.mean = spec.value("mean", params.mean);
    params.stddev = spec.value("stddev", params.stddev);
    params.bin_lo = spec.value("bin_lo", params.bin_lo);
    params.bin_hi = spec.value("bin_hi", params.bin_hi);
    params.domain_size = spec.value("domain_size", params.domain_size);
    params.attribute = spec.value("attribute", params.attribute);
    return GenerateSynthetic(params);
  }
  if (kind == "csv") {
    if (!spec.contains("path")) ThrowError(ErrorKind::kConfig, "csv dataset needs a \"path\"");
    CsvSchema schema;
    schema.has_header = spec.value("header", false);
    if (!spec.contains("columns") || !spec["columns"].is_array()) {
      ThrowError(ErrorKind::kConfig, "csv dataset needs a \"columns\" array");
    }
    for (const Json& col : spec["columns"]) {
      CsvColumnSpec c;
      c.attribute = col.value("attribute", std::string());
      if (c.attribute.empty()) {
        ThrowError(ErrorKind::kConfig, "csv column needs an \"attribute\" name");
      }
      c.index = col.value("index", -1);
      c.header = col.value("header", std::string());
      c.integer = col.value("integer", false);
      if (col.contains("padding")) {
        c.padding = col["padding"].get<std::vector<std::string>>();
      }
      schema.columns.push_back(std::move(c));
    }
    return LoadCsv(spec["path"].get<std::string>(), schema);
  }
  if (kind == "counts") {
    std::string attribute = spec.value("attribute", std::string("value"));
    auto counts = spec.at("counts").get<std::vector<int64_t>>();
    std::vector<std::string> labels;
    if (spec.contains("labels")) {
      labels = spec["labels"].get<std::vector<std::string>>();
    } else {
      for (size_t i = 1; i <= counts.size(); ++i) labels.push_back(std::to_string(i));
    }
    return Dataset::FromCounts(attribute, labels, counts);
  }
  ThrowError(ErrorKind::kConfig, "unknown dataset kind '" + kind + "'");
}

MechanismParams BuildMechanismParams(const Json& spec) {
  MechanismParams params;
  params.r = spec.value("r", params.r);
  params.s = spec.value("s", params.s);
  params.seed = spec.value("seed", params.seed);
  params.verify_contributors = spec.value("verify_contributors", false);
  if (spec.contains("distribution") && !spec["distribution"].is_null()) {
    const Json& dist = spec["distribution"];
    if (dist.is_string()) {
      if (dist.get<std::string>() != "uniform") {
        ThrowError(ErrorKind::kConfig,
                   "unknown distribution '" + dist.get<std::string>() + "'");
      }
      // uniform on [-r, r] is the default; nothing to set
    } else if (dist.contains("max_entropy")) {
      const Json& me = dist["max_entropy"];
      params.distribution = SolveMaxEntropy(me.at("support").get<std::vector<int>>(),
                                            me.at("variance_bound").get<double>());
    } else {
      params.distribution = NoiseDistribution(dist.at("support").get<std::vector<int>>(),
                                              dist.at("pmf").get<std::vector<double>>());
    }
  }
  return params;
}

AttackOptions BuildAttackOptions(const Json& spec) {
  AttackOptions options;
  std::string selection = spec.value("selection", std::string("first"));
  if (selection == "first") {
    options.selection = PartitionSelection::kFirstK;
  } else if (selection == "random") {
    options.selection = PartitionSelection::kRandomK;
  } else {
    ThrowError(ErrorKind::kConfig, "unknown partition selection '" + selection + "'");
  }
  options.selection_seed = spec.value("selection_seed", options.selection_seed);
  std::string rounding = spec.value("rounding", std::string("half-away"));
  if (rounding == "half-away") {
    options.rounding = RoundingMode::kHalfAwayFromZero;
  } else if (rounding == "half-even") {
    options.rounding = RoundingMode::kHalfToEven;
  } else {
    ThrowError(ErrorKind::kConfig, "unknown rounding mode '" + rounding + "'");
  }
  options.clamp_negative = spec.value("clamp_negative", true);
  options.base_partitions = spec.value("base_partitions", options.base_partitions);
  return options;
}

Query BuildQuery(const Json& clauses) {
  Query q;
  if (clauses.is_null()) return q;
  if (clauses.is_string()) return ParseWhere(clauses.get<std::string>());
  if (!clauses.is_object()) {
    ThrowError(ErrorKind::kConfig, "query must be an object of attribute -> values");
  }
  for (const auto& [attr, values] : clauses.items()) {
    q.Where(attr, values.get<std::vector<std::string>>());
  }
  return q;
}

Query ParseWhere(const std::string& text) {
  Query q;
  if (text.empty()) return q;
  for (const std::string& clause : SplitOn(text, ';')) {
    if (clause.empty()) continue;
    size_t eq = clause.find('=');
    if (eq == std::string::npos) {
      ThrowError(ErrorKind::kConfig, "clause '" + clause + "' is not Attr=v1|v2");
    }
    std::string attr = clause.substr(0, eq);
    std::vector<std::string> values = SplitOn(clause.substr(eq + 1), '|');
    if (attr.empty() || values.empty()) {
      ThrowError(ErrorKind::kConfig, "clause '" + clause + "' is not Attr=v1|v2");
    }
    q.Where(attr, values);
  }
  return q;
}

}  // namespace bnc
