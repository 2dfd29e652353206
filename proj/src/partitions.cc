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

#include "bnc/partitions.h"

#include <algorithm>

#include "bnc/error.h"

namespace bnc {

TwoPartition::TwoPartition(std::vector<ValueId> a, std::vector<ValueId> b)
    : first(std::move(a)), second(std::move(b)) {
  if (first.empty() || second.empty()) {
    ThrowError(ErrorKind::kParam, "two-partition sides must be non-empty");
  }
  std::sort(first.begin(), first.end());
  std::sort(second.begin(), second.end());
  for (ValueId v : first) {
    if (std::binary_search(second.begin(), second.end(), v)) {
      ThrowError(ErrorKind::kParam, "two-partition sides overlap");
    }
  }
  if (!std::lexicographical_compare(first.begin(), first.end(), second.begin(),
                                    second.end())) {
    std::swap(first, second);
  }
}

uint64_t PartitionPlan::AvailableFor(size_t m) {
  if (m < 2) return 0;
  if (m >= 65) return UINT64_MAX;
  return (m == 64) ? UINT64_MAX : (uint64_t{1} << (m - 1)) - 1;
}

std::vector<uint64_t> PartitionPlan::SelectMasks(uint64_t available, uint64_t k,
                                                 PartitionSelection selection,
                                                 uint64_t seed) {
  if (k == 0) ThrowError(ErrorKind::kParam, "need at least one two-partition");
  if (k > available) {
    ThrowError(ErrorKind::kParam,
               "requested " + std::to_string(k) + " two-partitions but only " +
                   std::to_string(available) + " exist");
  }
  if (selection == PartitionSelection::kFirstK) {
    std::vector<uint64_t> masks(k);
    for (uint64_t i = 0; i < k; ++i) masks[i] = i + 1;
    return masks;
  }
  Rng rng(seed);
  return rng.SampleDistinct(available, k);
}

PartitionPlan PartitionPlan::Partitions(std::vector<ValueId> values,
                                        std::vector<ValueId> append, uint64_t k,
                                        PartitionSelection selection, uint64_t seed) {
  if (values.size() < 2) {
    ThrowError(ErrorKind::kParam, "two-partitions need at least 2 values, got " +
                                      std::to_string(values.size()));
  }
  PartitionPlan plan;
  plan.primary_ = std::move(values);
  plan.append_ = std::move(append);
  plan.masks_ = SelectMasks(AvailableFor(plan.primary_.size()), k, selection, seed);
  return plan;
}

PartitionPlan PartitionPlan::Anchored(ValueId a, ValueId b,
                                      std::vector<ValueId> middles, uint64_t k,
                                      PartitionSelection selection, uint64_t seed) {
  if (middles.size() < 2) {
    ThrowError(ErrorKind::kParam,
               "anchored partitions need at least 2 middle values, got " +
                   std::to_string(middles.size()));
  }
  PartitionPlan plan;
  plan.primary_ = std::move(middles);
  plan.anchored_ = true;
  plan.anchor_a_ = a;
  plan.anchor_b_ = b;
  plan.masks_ = SelectMasks(AvailableFor(plan.primary_.size()), k, selection, seed);
  return plan;
}

void PartitionPlan::Sides(size_t i, std::vector<ValueId>& side_a,
                          std::vector<ValueId>& side_b) const {
  side_a.clear();
  side_b.clear();
  uint64_t mask = masks_[i];
  side_a.push_back(primary_[0]);
  for (size_t j = 1; j < primary_.size(); ++j) {
    uint64_t bit = (j - 1 < 64) ? (mask >> (j - 1)) & 1 : 0;
    (bit ? side_b : side_a).push_back(primary_[j]);
  }
  if (anchored_) {
    side_a.push_back(anchor_a_);
    side_b.push_back(anchor_b_);
  } else if (!append_.empty()) {
    auto& target = (i % 2 == 0) ? side_a : side_b;
    target.insert(target.end(), append_.begin(), append_.end());
  }
}

TwoPartition PartitionPlan::At(size_t i) const {
  std::vector<ValueId> a;
  std::vector<ValueId> b;
  Sides(i, a, b);
  return TwoPartition(std::move(a), std::move(b));
}

namespace {

std::vector<TwoPartition> Materialise(const PartitionPlan& plan) {
  std::vector<TwoPartition> out;
  out.reserve(plan.size());
  for (size_t i = 0; i < plan.size(); ++i) out.push_back(plan.At(i));
  return out;
}

void CheckMaterialisable(size_t m) {
  if (m < 2) {
    ThrowError(ErrorKind::kParam,
               "two-partitions need at least 2 values, got " + std::to_string(m));
  }
  if (m > 24) {
    ThrowError(ErrorKind::kParam,
               "refusing to materialise 2^" + std::to_string(m - 1) +
                   " - 1 two-partitions; use PartitionPlan");
  }
}

}  // namespace

std::vector<TwoPartition> EnumerateTwoPartitions(std::span<const ValueId> values) {
  CheckMaterialisable(values.size());
  PartitionPlan plan = PartitionPlan::Partitions(
      {values.begin(), values.end()}, {}, PartitionPlan::AvailableFor(values.size()));
  return Materialise(plan);
}

std::vector<TwoPartition> BuildPartitionsWithZeroSet(std::span<const ValueId> nonzero,
                                                     std::span<const ValueId> zero) {
  CheckMaterialisable(nonzero.size());
  PartitionPlan plan = PartitionPlan::Partitions(
      {nonzero.begin(), nonzero.end()}, {zero.begin(), zero.end()},
      PartitionPlan::AvailableFor(nonzero.size()));
  return Materialise(plan);
}

std::vector<TwoPartition> BuildPartitionsAnchored(ValueId a, ValueId b,
                                                  std::span<const ValueId> middles) {
  CheckMaterialisable(middles.size());
  PartitionPlan plan = PartitionPlan::Anchored(
      a, b, {middles.begin(), middles.end()}, PartitionPlan::AvailableFor(middles.size()));
  return Materialise(plan);
}

}  // namespace bnc
