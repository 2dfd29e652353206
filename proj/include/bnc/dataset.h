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

#ifndef BNC_DATASET_H_
#define BNC_DATASET_H_

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "bnc/error.h"
#include "bnc/rng.h"

namespace bnc {

using RowId = uint32_t;
using AttrId = uint32_t;
using ValueId = uint32_t;

// Order-independent 128-bit digest of a set of row ids. Digests of disjoint
// sets add, so the digest of a union of per-value contributor sets can be
// assembled without materialising the rows. Two equal sets always have equal
// digests; unequal sets collide with probability ~2^-128.
struct SetDigest {
  uint64_t a = 0;
  uint64_t b = 0;

  void AddRow(RowId row) {
    a += Mix64(static_cast<uint64_t>(row) + 0x243f6a8885a308d3ULL);
    b += Mix64(static_cast<uint64_t>(row) * 0x9e3779b97f4a7c15ULL + 0x13198a2e03707344ULL);
  }
  void Add(const SetDigest& other) {
    a += other.a;
    b += other.b;
  }
  bool operator==(const SetDigest& other) const = default;
};

struct SetDigestHash {
  size_t operator()(const SetDigest& d) const { return static_cast<size_t>(d.a); }
};

// The exact set of individuals (row indices) satisfying a query. Members are
// sorted and unique, so equality is canonical.
class ContributorSet {
 public:
  ContributorSet() = default;
  explicit ContributorSet(std::vector<RowId> sorted_members)
      : members_(std::move(sorted_members)) {}

  const std::vector<RowId>& members() const { return members_; }
  size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool operator==(const ContributorSet& other) const = default;

  SetDigest digest() const {
    SetDigest d;
    for (RowId row : members_) d.AddRow(row);
    return d;
  }

 private:
  std::vector<RowId> members_;  // sorted ascending, no duplicates
};

// A conjunction of per-attribute membership clauses. A row satisfies the
// query iff for every clause its value under that attribute is in the
// clause's subset. An empty query is satisfied by every row.
class Query {
 public:
  Query() = default;

  // Adds values to the clause for `attribute`, creating it if absent.
  Query& Where(const std::string& attribute,
               std::initializer_list<std::string> values);
  Query& Where(const std::string& attribute,
               const std::vector<std::string>& values);

  const std::map<std::string, std::set<std::string>>& clauses() const {
    return clauses_;
  }
  bool empty() const { return clauses_.empty(); }

 private:
  std::map<std::string, std::set<std::string>> clauses_;
};

// A query resolved against a concrete dataset: attribute names and value
// labels replaced by dense ids. Cheap to evaluate repeatedly.
struct CompiledClause {
  AttrId attr = 0;
  std::vector<ValueId> values;  // sorted, unique, non-empty
};

struct CompiledQuery {
  std::vector<CompiledClause> clauses;  // sorted by attr
  bool empty() const { return clauses.empty(); }
  bool ConstrainsAttr(AttrId attr) const;
};

// Count plus digest for one attribute value (or an aggregate of values).
struct ValueAggregate {
  int64_t count = 0;
  SetDigest digest;

  void Add(const ValueAggregate& other) {
    count += other.count;
    digest.Add(other.digest);
  }
};

struct QueryResult {
  int64_t count = 0;
  ContributorSet contributors;
};

// An immutable table of rows over named attributes with finite value
// domains. Each row takes exactly one value per attribute. Row indices stand
// in for the hidden individuals, so |rows| is also the population size.
//
// Construction precomputes, per attribute value: the posting list of rows,
// the count, and the set digest. Single-attribute queries then evaluate in
// time proportional to the number of values they mention, independent of the
// number of rows.
class Dataset {
 public:
  struct AttributeSpec {
    std::string name;
    std::vector<std::string> labels;  // dense ValueId -> label
  };

  // `columns[a][row]` is the ValueId of `row` under attribute `a`. All
  // columns must have the same length and ids must index into labels.
  Dataset(std::vector<AttributeSpec> attributes,
          std::vector<std::vector<ValueId>> columns);

  // Builds a single-attribute dataset from a histogram: value i of
  // `labels` gets `counts[i]` consecutive rows.
  static Dataset FromCounts(const std::string& attribute,
                            const std::vector<std::string>& labels,
                            const std::vector<int64_t>& counts);

  size_t row_count() const { return row_count_; }
  size_t attribute_count() const { return attributes_.size(); }
  const std::vector<std::string>& attribute_names() const { return names_; }

  AttrId attr_id(const std::string& name) const;
  bool has_attribute(const std::string& name) const;
  const std::string& attr_name(AttrId attr) const { return attributes_[attr].name; }
  size_t domain_size(AttrId attr) const { return attributes_[attr].labels.size(); }
  const std::vector<std::string>& labels(AttrId attr) const {
    return attributes_[attr].labels;
  }
  ValueId value_id(AttrId attr, const std::string& label) const;
  const std::string& label(AttrId attr, ValueId value) const {
    return attributes_[attr].labels[value];
  }
  ValueId value_of(AttrId attr, RowId row) const { return columns_[attr][row]; }

  // True count of rows holding `value` under `attr`.
  int64_t value_count(AttrId attr, ValueId value) const {
    return aggregates_[attr][value].count;
  }
  const ValueAggregate& value_aggregate(AttrId attr, ValueId value) const {
    return aggregates_[attr][value];
  }
  const std::vector<RowId>& posting(AttrId attr, ValueId value) const {
    return postings_[attr][value];
  }

  // Count and digest of the whole population.
  const ValueAggregate& population() const { return population_; }

  // Validates a query against this dataset's schema. Unknown attributes or
  // values raise kDomain errors naming the offending clause.
  CompiledQuery Compile(const Query& query) const;

  // Exact evaluation: the count and the materialised contributor set.
  QueryResult Evaluate(const CompiledQuery& query) const;
  QueryResult Evaluate(const Query& query) const { return Evaluate(Compile(query)); }

  // Count plus digest only; skips materialising rows when the query is a
  // single clause (every value's aggregate is precomputed).
  ValueAggregate EvaluateAggregate(const CompiledQuery& query) const;

 private:
  std::vector<AttributeSpec> attributes_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, AttrId> name_to_id_;
  std::vector<std::vector<ValueId>> columns_;       // [attr][row]
  std::vector<std::vector<std::vector<RowId>>> postings_;  // [attr][value]
  std::vector<std::vector<ValueAggregate>> aggregates_;    // [attr][value]
  ValueAggregate population_;
  size_t row_count_ = 0;

  std::vector<RowId> MaterialiseRows(const CompiledQuery& query) const;
};

}  // namespace bnc

#endif  // BNC_DATASET_H_
