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

#include "bnc/dataset.h"

#include <algorithm>

namespace bnc {

Query& Query::Where(const std::string& attribute,
                    std::initializer_list<std::string> values) {
  clauses_[attribute].insert(values.begin(), values.end());
  return *this;
}

Query& Query::Where(const std::string& attribute,
                    const std::vector<std::string>& values) {
  clauses_[attribute].insert(values.begin(), values.end());
  return *this;
}

bool CompiledQuery::ConstrainsAttr(AttrId attr) const {
  for (const auto& clause : clauses) {
    if (clause.attr == attr) return true;
  }
  return false;
}

Dataset::Dataset(std::vector<AttributeSpec> attributes,
                 std::vector<std::vector<ValueId>> columns)
    : attributes_(std::move(attributes)), columns_(std::move(columns)) {
  if (attributes_.empty() || attributes_.size() != columns_.size()) {
    ThrowError(ErrorKind::kParam,
               "dataset needs one column per attribute (got " +
                   std::to_string(columns_.size()) + " columns, " +
                   std::to_string(attributes_.size()) + " attributes)");
  }
  row_count_ = columns_[0].size();
  for (AttrId a = 0; a < attributes_.size(); ++a) {
    const auto& spec = attributes_[a];
    if (columns_[a].size() != row_count_) {
      ThrowError(ErrorKind::kParam, "attribute '" + spec.name +
                                        "' column length differs from row count");
    }
    if (name_to_id_.count(spec.name) != 0) {
      ThrowError(ErrorKind::kParam, "duplicate attribute name '" + spec.name + "'");
    }
    name_to_id_[spec.name] = a;
    names_.push_back(spec.name);
  }

  postings_.resize(attributes_.size());
  aggregates_.resize(attributes_.size());
  for (AttrId a = 0; a < attributes_.size(); ++a) {
    size_t domain = attributes_[a].labels.size();
    postings_[a].resize(domain);
    aggregates_[a].resize(domain);
    for (RowId row = 0; row < row_count_; ++row) {
      ValueId v = columns_[a][row];
      if (v >= domain) {
        ThrowError(ErrorKind::kParam,
                   "row " + std::to_string(row) + " has out-of-domain value id under '" +
                       attributes_[a].name + "'");
      }
      postings_[a][v].push_back(row);
    }
    for (ValueId v = 0; v < domain; ++v) {
      ValueAggregate& agg = aggregates_[a][v];
      agg.count = static_cast<int64_t>(postings_[a][v].size());
      for (RowId row : postings_[a][v]) agg.digest.AddRow(row);
    }
  }
  population_.count = static_cast<int64_t>(row_count_);
  for (RowId row = 0; row < row_count_; ++row) population_.digest.AddRow(row);
}

Dataset Dataset::FromCounts(const std::string& attribute,
                            const std::vector<std::string>& labels,
                            const std::vector<int64_t>& counts) {
  if (labels.size() != counts.size()) {
    ThrowError(ErrorKind::kParam, "labels and counts differ in length");
  }
  std::vector<ValueId> column;
  int64_t total = 0;
  for (int64_t c : counts) {
    if (c < 0) ThrowError(ErrorKind::kParam, "negative count");
    total += c;
  }
  if (total == 0) ThrowError(ErrorKind::kParam, "dataset must have at least one row");
  column.reserve(static_cast<size_t>(total));
  for (ValueId v = 0; v < counts.size(); ++v) {
    for (int64_t i = 0; i < counts[v]; ++i) column.push_back(v);
  }
  return Dataset({AttributeSpec{attribute, labels}}, {std::move(column)});
}

AttrId Dataset::attr_id(const std::string& name) const {
  auto it = name_to_id_.find(name);
  if (it == name_to_id_.end()) {
    ThrowError(ErrorKind::kDomain, "unknown attribute '" + name + "'");
  }
  return it->second;
}

bool Dataset::has_attribute(const std::string& name) const {
  return name_to_id_.count(name) != 0;
}

ValueId Dataset::value_id(AttrId attr, const std::string& label) const {
  const auto& labels = attributes_[attr].labels;
  for (ValueId v = 0; v < labels.size(); ++v) {
    if (labels[v] == label) return v;
  }
  ThrowError(ErrorKind::kDomain, "attribute '" + attributes_[attr].name +
                                     "' has no value '" + label + "'");
}

CompiledQuery Dataset::Compile(const Query& query) const {
  CompiledQuery compiled;
  for (const auto& [attr_name, values] : query.clauses()) {
    if (!has_attribute(attr_name)) {
      ThrowError(ErrorKind::kDomain,
                 "clause on unknown attribute '" + attr_name + "'");
    }
    CompiledClause clause;
    clause.attr = attr_id(attr_name);
    if (values.empty()) {
      ThrowError(ErrorKind::kDomain,
                 "clause on '" + attr_name + "' has an empty value subset");
    }
    for (const std::string& label : values) {
      clause.values.push_back(value_id(clause.attr, label));
    }
    std::sort(clause.values.begin(), clause.values.end());
    clause.values.erase(std::unique(clause.values.begin(), clause.values.end()),
                        clause.values.end());
    compiled.clauses.push_back(std::move(clause));
  }
  std::sort(compiled.clauses.begin(), compiled.clauses.end(),
            [](const CompiledClause& x, const CompiledClause& y) {
              return x.attr < y.attr;
            });
  return compiled;
}

std::vector<RowId> Dataset::MaterialiseRows(const CompiledQuery& query) const {
  if (query.empty()) {
    std::vector<RowId> all(row_count_);
    for (RowId row = 0; row < row_count_; ++row) all[row] = row;
    return all;
  }
  // Drive the scan from the clause with the fewest candidate rows.
  size_t best = 0;
  int64_t best_extent = -1;
  for (size_t i = 0; i < query.clauses.size(); ++i) {
    int64_t extent = 0;
    for (ValueId v : query.clauses[i].values) {
      extent += value_count(query.clauses[i].attr, v);
    }
    if (best_extent < 0 || extent < best_extent) {
      best_extent = extent;
      best = i;
    }
  }
  const CompiledClause& driver = query.clauses[best];
  std::vector<RowId> rows;
  rows.reserve(static_cast<size_t>(best_extent));
  for (ValueId v : driver.values) {
    const auto& posting = postings_[driver.attr][v];
    rows.insert(rows.end(), posting.begin(), posting.end());
  }
  std::sort(rows.begin(), rows.end());

  std::vector<RowId> out;
  out.reserve(rows.size());
  for (RowId row : rows) {
    bool keep = true;
    for (size_t i = 0; i < query.clauses.size(); ++i) {
      if (i == best) continue;
      const CompiledClause& clause = query.clauses[i];
      ValueId v = columns_[clause.attr][row];
      if (!std::binary_search(clause.values.begin(), clause.values.end(), v)) {
        keep = false;
        break;
      }
    }
    if (keep) out.push_back(row);
  }
  return out;
}

QueryResult Dataset::Evaluate(const CompiledQuery& query) const {
  std::vector<RowId> rows = MaterialiseRows(query);
  QueryResult result;
  result.count = static_cast<int64_t>(rows.size());
  result.contributors = ContributorSet(std::move(rows));
  return result;
}

ValueAggregate Dataset::EvaluateAggregate(const CompiledQuery& query) const {
  if (query.empty()) return population_;
  if (query.clauses.size() == 1) {
    const CompiledClause& clause = query.clauses[0];
    ValueAggregate agg;
    for (ValueId v : clause.values) agg.Add(aggregates_[clause.attr][v]);
    return agg;
  }
  ValueAggregate agg;
  for (RowId row : MaterialiseRows(query)) {
    agg.count += 1;
    agg.digest.AddRow(row);
  }
  return agg;
}

}  // namespace bnc
