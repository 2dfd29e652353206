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

#ifndef BNC_PARTITIONS_H_
#define BNC_PARTITIONS_H_

#include <cstdint>
#include <span>
#include <vector>

#include "bnc/dataset.h"
#include "bnc/rng.h"

namespace bnc {

// An unordered split of a value set into two disjoint non-empty covering
// subsets. Canonical form: both sides sorted, lexicographically smaller side
// stored first.
struct TwoPartition {
  std::vector<ValueId> first;
  std::vector<ValueId> second;

  TwoPartition(std::vector<ValueId> a, std::vector<ValueId> b);
  bool operator==(const TwoPartition& other) const = default;
};

enum class PartitionSelection {
  kFirstK,   // the first k in canonical enumeration order
  kRandomK,  // k sampled without replacement, seeded
};

// Lazily generates a chosen set of two-partitions. A set of m values has
// 2^(m-1) - 1 two-partitions; each is encoded by the subset of values
// excluding the first one ("mask"), so partition masks run 1 .. 2^(m-1) - 1
// in canonical order.
//
// Two constructions:
//  - Partitions(values, append, ...): two-partitions of `values`; if
//    `append` is non-empty the whole of it joins one side, alternating
//    deterministically with the partition's position in the sequence. This
//    folds zero-output values into valid partitions of the full set.
//  - Anchored(a, b, middles, ...): two-partitions of `middles` with `a`
//    pinned to one side and `b` to the other; usable when only two values
//    have non-zero outputs but the middles have non-empty contributors.
class PartitionPlan {
 public:
  // Number of two-partitions of an m-value set, saturated at uint64 max.
  static uint64_t AvailableFor(size_t m);

  static PartitionPlan Partitions(std::vector<ValueId> values,
                                  std::vector<ValueId> append, uint64_t k,
                                  PartitionSelection selection = PartitionSelection::kFirstK,
                                  uint64_t seed = 0);

  static PartitionPlan Anchored(ValueId a, ValueId b, std::vector<ValueId> middles,
                                uint64_t k,
                                PartitionSelection selection = PartitionSelection::kFirstK,
                                uint64_t seed = 0);

  uint64_t size() const { return masks_.size(); }

  // Fills the two sides of partition i (0-based), reusing the buffers.
  void Sides(size_t i, std::vector<ValueId>& side_a, std::vector<ValueId>& side_b) const;

  TwoPartition At(size_t i) const;

 private:
  std::vector<ValueId> primary_;
  std::vector<ValueId> append_;
  std::vector<uint64_t> masks_;
  ValueId anchor_a_ = 0;
  ValueId anchor_b_ = 0;
  bool anchored_ = false;

  static std::vector<uint64_t> SelectMasks(uint64_t available, uint64_t k,
                                           PartitionSelection selection, uint64_t seed);
};

// All 2^(m-1) - 1 two-partitions of `values`, materialised in canonical
// order. Requires 2 <= m <= 24 (larger sets must use PartitionPlan).
std::vector<TwoPartition> EnumerateTwoPartitions(std::span<const ValueId> values);

// Two-partitions of nonzero ∪ zero built from the two-partitions of
// `nonzero`, the zero-output block appended to alternating sides. With an
// empty zero block this equals EnumerateTwoPartitions(nonzero).
std::vector<TwoPartition> BuildPartitionsWithZeroSet(std::span<const ValueId> nonzero,
                                                     std::span<const ValueId> zero);

// The pinned variant: partitions of `middles` with `a` joined to one side
// and `b` to the other.
std::vector<TwoPartition> BuildPartitionsAnchored(ValueId a, ValueId b,
                                                  std::span<const ValueId> middles);

}  // namespace bnc

#endif  // BNC_PARTITIONS_H_
