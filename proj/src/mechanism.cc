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

#include "bnc/mechanism.h"

#include <algorithm>
#include <cinttypes>
#include <cstdio>

namespace bnc {

BoundedNoisyCounts::BoundedNoisyCounts(const Dataset& dataset, MechanismParams params)
    : dataset_(dataset),
      params_(std::move(params)),
      distribution_(params_.distribution ? *params_.distribution
                                         : NoiseDistribution::Uniform(params_.r)),
      rng_(params_.seed) {
  if (params_.r < 1) {
    ThrowError(ErrorKind::kParam, "perturbation parameter r must be >= 1");
  }
  // s >= r is the standard contract; s = r - 1 still keeps answers
  // non-negative and is accepted for low-suppression configurations.
  if (params_.s < params_.r - 1) {
    ThrowError(ErrorKind::kParam,
               "suppression parameter s = " + std::to_string(params_.s) +
                   " must be at least r - 1 = " + std::to_string(params_.r - 1));
  }
  if (distribution_.min_value() < -params_.r || distribution_.max_value() > params_.r) {
    ThrowError(ErrorKind::kParam,
               "noise support exceeds [-r, r] with r = " + std::to_string(params_.r));
  }
}

int64_t BoundedNoisyCounts::Answer(const Query& query) {
  return Answer(dataset_.Compile(query));
}

int64_t BoundedNoisyCounts::Answer(const CompiledQuery& query) {
  if (!params_.verify_contributors) {
    return AnswerAggregate(dataset_.EvaluateAggregate(query));
  }
  QueryResult result = dataset_.Evaluate(query);
  ValueAggregate agg{result.count, result.contributors.digest()};
  return AnswerAggregate(agg, &result.contributors.members());
}

int64_t BoundedNoisyCounts::AnswerAggregate(const ValueAggregate& aggregate,
                                            const std::vector<RowId>* exact) {
  ++query_count_;
  if (aggregate.count <= params_.s) return 0;
  auto [it, inserted] = dictionary_.try_emplace(aggregate.digest, 0);
  if (inserted) {
    it->second = distribution_.Sample(rng_);
    ++fresh_count_;
    if (params_.verify_contributors && exact != nullptr) {
      members_.emplace(aggregate.digest, *exact);
    }
  } else if (params_.verify_contributors && exact != nullptr) {
    auto stored = members_.find(aggregate.digest);
    if (stored != members_.end() && stored->second != *exact) {
      ThrowError(ErrorKind::kInvariant,
                 "contributor digest collision: two distinct sets share a key");
    }
  }
  return aggregate.count + it->second;
}

void BoundedNoisyCounts::DumpDictionary(std::ostream& out) const {
  std::vector<std::string> lines;
  lines.reserve(dictionary_.size());
  char buf[64];
  for (const auto& [digest, noise] : dictionary_) {
    std::snprintf(buf, sizeof(buf), "%016" PRIx64 "%016" PRIx64 " %d", digest.a,
                  digest.b, noise);
    lines.emplace_back(buf);
  }
  std::sort(lines.begin(), lines.end());
  for (const std::string& line : lines) out << line << '\n';
}

AttributeAnalyser::AttributeAnalyser(BoundedNoisyCounts& mechanism, const Query& b,
                                     const std::string& attribute)
    : AttributeAnalyser(mechanism, mechanism.dataset().Compile(b),
                        mechanism.dataset().attr_id(attribute)) {}

AttributeAnalyser::AttributeAnalyser(BoundedNoisyCounts& mechanism,
                                     const CompiledQuery& b, AttrId attribute)
    : mechanism_(mechanism), attr_(attribute), b_(b) {
  if (b_.ConstrainsAttr(attr_)) {
    ThrowError(ErrorKind::kInterface,
               "analyser attribute '" + dataset().attr_name(attr_) +
                   "' is already constrained by the sub-population query");
  }
  Init();
}

void AttributeAnalyser::Init() {
  const Dataset& data = dataset();
  size_t domain = data.domain_size(attr_);
  bool verify = mechanism_.verify_contributors();

  if (b_.empty()) {
    // Whole-population view: the dataset's precomputed per-value aggregates
    // are exactly what we need.
    aggregates_.resize(domain);
    for (ValueId v = 0; v < domain; ++v) aggregates_[v] = data.value_aggregate(attr_, v);
    base_ = data.population();
    if (verify) {
      rows_.resize(domain);
      for (ValueId v = 0; v < domain; ++v) rows_[v] = data.posting(attr_, v);
      base_rows_.resize(data.row_count());
      for (RowId row = 0; row < data.row_count(); ++row) base_rows_[row] = row;
    }
    return;
  }

  QueryResult b_result = data.Evaluate(b_);
  aggregates_.resize(domain);
  if (verify) rows_.resize(domain);
  for (RowId row : b_result.contributors.members()) {
    ValueId v = data.value_of(attr_, row);
    aggregates_[v].count += 1;
    aggregates_[v].digest.AddRow(row);
    if (verify) rows_[v].push_back(row);
  }
  base_.count = b_result.count;
  base_.digest = b_result.contributors.digest();
  if (verify) base_rows_ = b_result.contributors.members();
}

int64_t AttributeAnalyser::AnswerSubset(std::span<const ValueId> subset) {
  ValueAggregate agg;
  for (ValueId v : subset) agg.Add(aggregates_[v]);
  if (!mechanism_.verify_contributors()) {
    return mechanism_.AnswerAggregate(agg);
  }
  std::vector<RowId> rows;
  for (ValueId v : subset) rows.insert(rows.end(), rows_[v].begin(), rows_[v].end());
  std::sort(rows.begin(), rows.end());
  return mechanism_.AnswerAggregate(agg, &rows);
}

AnalyserAnswer AttributeAnalyser::Analyse(std::span<const ValueId> subset) {
  size_t domain = aggregates_.size();
  for (ValueId v : subset) {
    if (v >= domain) {
      ThrowError(ErrorKind::kDomain, "value id " + std::to_string(v) +
                                         " out of range for attribute '" +
                                         dataset().attr_name(attr_) + "'");
    }
  }
  AnalyserAnswer answer;
  if (subset.empty()) {
    // Degenerate case: the total query over the empty subset is b itself.
    answer.total = mechanism_.verify_contributors()
                       ? mechanism_.AnswerAggregate(base_, &base_rows_)
                       : mechanism_.AnswerAggregate(base_);
    return answer;
  }
  answer.per_value.reserve(subset.size());
  for (ValueId v : subset) {
    answer.per_value.push_back(AnswerSubset(std::span<const ValueId>(&v, 1)));
  }
  answer.total = AnswerSubset(subset);
  return answer;
}

AnalyserAnswer AttributeAnalyser::AnalyseLabels(const std::vector<std::string>& subset) {
  std::vector<ValueId> ids;
  ids.reserve(subset.size());
  for (const std::string& label : subset) ids.push_back(ValueIdOf(label));
  return Analyse(ids);
}

}  // namespace bnc
