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

#ifndef BNC_MECHANISM_H_
#define BNC_MECHANISM_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "bnc/dataset.h"
#include "bnc/noise.h"

namespace bnc {

struct MechanismParams {
  int r = 2;       // perturbation parameter: noise support within [-r, r]
  int s = 4;       // suppression parameter: true counts <= s answer as 0
  uint64_t seed = 1;
  // Defaults to the discrete uniform on [-r, r].
  std::optional<NoiseDistribution> distribution;
  // When set, the dictionary stores each entry's sorted member list and
  // checks it on every digest hit. Exact but memory-heavy; meant for tests.
  bool verify_contributors = false;
};

// The query-answering oracle. Adds zero-mean bounded noise to true counts,
// suppresses counts <= s to 0, and keys noise on the contributor set: two
// queries satisfied by the same individuals always get the same noise.
//
// Stateful and single-threaded; run concurrent trials on separate instances.
class BoundedNoisyCounts {
 public:
  BoundedNoisyCounts(const Dataset& dataset, MechanismParams params);

  // Answers one counting query. Never negative; within [n - s, n + r] of the
  // true count n.
  int64_t Answer(const Query& query);
  int64_t Answer(const CompiledQuery& query);

  // Core path used by AttributeAnalyser: the caller supplies the true count
  // and contributor digest. `exact` carries the materialised rows in
  // verify_contributors mode.
  int64_t AnswerAggregate(const ValueAggregate& aggregate,
                          const std::vector<RowId>* exact = nullptr);

  const Dataset& dataset() const { return dataset_; }
  int r() const { return params_.r; }
  int s() const { return params_.s; }
  const NoiseDistribution& distribution() const { return distribution_; }
  bool verify_contributors() const { return params_.verify_contributors; }

  uint64_t query_count() const { return query_count_; }
  uint64_t fresh_noise_count() const { return fresh_count_; }
  size_t dictionary_size() const { return dictionary_.size(); }

  // Writes "digest_hex noise" lines, sorted, for test forensics.
  void DumpDictionary(std::ostream& out) const;

 private:
  const Dataset& dataset_;
  MechanismParams params_;
  NoiseDistribution distribution_;
  Rng rng_;
  std::unordered_map<SetDigest, int, SetDigestHash> dictionary_;
  std::unordered_map<SetDigest, std::vector<RowId>, SetDigestHash> members_;
  uint64_t query_count_ = 0;
  uint64_t fresh_count_ = 0;
};

// One Attribute Analyser response: the noisy count of each queried value, in
// input order, then the noisy count of the total query over the subset.
struct AnalyserAnswer {
  std::vector<int64_t> per_value;
  int64_t total = 0;
};

// The table-style front end: bound to a sub-population query b and a target
// attribute A (which b must not constrain). Analyse(subset) asks the
// mechanism for each value of the subset in order, then for the total query
// over the subset; an empty subset degenerates to answering b itself.
//
// Construction scans the b sub-population once; every Analyse call then
// costs O(|subset|) mechanism work.
class AttributeAnalyser {
 public:
  AttributeAnalyser(BoundedNoisyCounts& mechanism, const Query& b,
                    const std::string& attribute);
  AttributeAnalyser(BoundedNoisyCounts& mechanism, const CompiledQuery& b,
                    AttrId attribute);

  AnalyserAnswer Analyse(std::span<const ValueId> subset);
  AnalyserAnswer AnalyseLabels(const std::vector<std::string>& subset);

  AttrId attribute() const { return attr_; }
  size_t domain_size() const { return aggregates_.size(); }
  const Dataset& dataset() const { return mechanism_.dataset(); }
  BoundedNoisyCounts& mechanism() { return mechanism_; }

  ValueId ValueIdOf(const std::string& label) const {
    return dataset().value_id(attr_, label);
  }
  const std::string& LabelOf(ValueId value) const {
    return dataset().label(attr_, value);
  }

 private:
  BoundedNoisyCounts& mechanism_;
  AttrId attr_;
  CompiledQuery b_;
  std::vector<ValueAggregate> aggregates_;  // per value of A within C(b)
  ValueAggregate base_;                     // C(b) itself
  // verify_contributors mode only: rows per value within C(b).
  std::vector<std::vector<RowId>> rows_;
  std::vector<RowId> base_rows_;

  void Init();
  int64_t AnswerSubset(std::span<const ValueId> subset);
};

}  // namespace bnc

#endif  // BNC_MECHANISM_H_
