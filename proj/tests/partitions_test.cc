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
#include <set>

#include "doctest.h"

using namespace bnc;

namespace {

std::vector<ValueId> Ids(std::initializer_list<ValueId> v) { return {v}; }

// Canonical encoding of a partition for set comparisons.
std::set<std::set<ValueId>> AsSets(const TwoPartition& p) {
  return {{p.first.begin(), p.first.end()}, {p.second.begin(), p.second.end()}};
}

}  // namespace

TEST_CASE("a four-value set has exactly the seven known two-partitions") {
  // Values: 0 = Darlinghurst, 1 = Newtown, 2 = Redfern, 3 = Surry Hills.
  auto partitions = EnumerateTwoPartitions(Ids({0, 1, 2, 3}));
  REQUIRE(partitions.size() == 7);

  std::set<std::set<std::set<ValueId>>> got;
  for (const auto& p : partitions) got.insert(AsSets(p));
  std::set<std::set<std::set<ValueId>>> want = {
      {{0}, {1, 2, 3}}, {{1}, {0, 2, 3}}, {{2}, {0, 1, 3}}, {{3}, {0, 1, 2}},
      {{0, 1}, {2, 3}}, {{0, 2}, {1, 3}}, {{0, 3}, {1, 2}},
  };
  CHECK(got == want);
}

TEST_CASE("a two-value set has exactly one two-partition") {
  auto partitions = EnumerateTwoPartitions(Ids({4, 9}));
  REQUIRE(partitions.size() == 1);
  CHECK(partitions[0].first == Ids({4}));
  CHECK(partitions[0].second == Ids({9}));
}

TEST_CASE("twelve values give 2047 distinct two-partitions") {
  std::vector<ValueId> values(12);
  for (ValueId i = 0; i < 12; ++i) values[i] = i;
  auto partitions = EnumerateTwoPartitions(values);
  CHECK(partitions.size() == 2047);
  std::set<std::set<std::set<ValueId>>> unique;
  for (const auto& p : partitions) {
    // Each side must be non-empty, disjoint, and cover the set.
    CHECK(!p.first.empty());
    CHECK(!p.second.empty());
    CHECK(p.first.size() + p.second.size() == 12);
    unique.insert(AsSets(p));
  }
  CHECK(unique.size() == 2047);
}

TEST_CASE("enumeration order is deterministic") {
  auto a = EnumerateTwoPartitions(Ids({0, 1, 2, 3, 4}));
  auto b = EnumerateTwoPartitions(Ids({0, 1, 2, 3, 4}));
  CHECK(a == b);
}

TEST_CASE("degenerate inputs are rejected") {
  CHECK_THROWS_AS(EnumerateTwoPartitions(Ids({7})), Error);
  CHECK_THROWS_AS(EnumerateTwoPartitions(Ids({})), Error);
  CHECK_THROWS_AS(TwoPartition({0, 1}, {1, 2}), Error);  // overlap
  CHECK_THROWS_AS(TwoPartition({}, {1}), Error);         // empty side
}

TEST_CASE("partition sides are canonically ordered") {
  TwoPartition p({3, 1}, {0, 2});
  CHECK(p.first == Ids({0, 2}));
  CHECK(p.second == Ids({1, 3}));
}

TEST_CASE("zero-set values are appended to alternating sides") {
  auto partitions = BuildPartitionsWithZeroSet(Ids({0, 1, 2}), Ids({8, 9}));
  REQUIRE(partitions.size() == 3);  // 2^2 - 1 regardless of the zero block
  for (const auto& p : partitions) {
    // Every partition covers all five values.
    CHECK(p.first.size() + p.second.size() == 5);
    bool in_first = std::binary_search(p.first.begin(), p.first.end(), ValueId{8});
    bool nine_first = std::binary_search(p.first.begin(), p.first.end(), ValueId{9});
    CHECK(in_first == nine_first);  // the zero block never splits
  }
  // With an empty zero set this is plain enumeration.
  auto plain = BuildPartitionsWithZeroSet(Ids({0, 1, 2}), {});
  CHECK(plain == EnumerateTwoPartitions(Ids({0, 1, 2})));
}

TEST_CASE("zero-set needs at least two non-zero values") {
  CHECK_THROWS_AS(BuildPartitionsWithZeroSet(Ids({5}), Ids({1, 2})), Error);
}

TEST_CASE("anchored partitions pin the two non-zero values to opposite sides") {
  auto partitions = BuildPartitionsAnchored(10, 11, Ids({0, 1, 2, 3}));
  REQUIRE(partitions.size() == 7);  // 2^(4-1) - 1 from the middles
  std::set<std::set<std::set<ValueId>>> unique;
  for (const auto& p : partitions) {
    bool a_first = std::binary_search(p.first.begin(), p.first.end(), ValueId{10});
    bool b_first = std::binary_search(p.first.begin(), p.first.end(), ValueId{11});
    CHECK(a_first != b_first);  // anchors on opposite sides
    CHECK(p.first.size() + p.second.size() == 6);
    unique.insert(AsSets(p));
  }
  CHECK(unique.size() == 7);
}

TEST_CASE("plans generate the first k in canonical order") {
  PartitionPlan plan = PartitionPlan::Partitions(Ids({0, 1, 2, 3}), {}, 3);
  auto all = EnumerateTwoPartitions(Ids({0, 1, 2, 3}));
  REQUIRE(plan.size() == 3);
  for (size_t i = 0; i < 3; ++i) CHECK(plan.At(i) == all[i]);
}

TEST_CASE("random plans are seeded, distinct and within range") {
  std::vector<ValueId> values(12);
  for (ValueId i = 0; i < 12; ++i) values[i] = i;
  PartitionPlan p1 = PartitionPlan::Partitions(values, {}, 100,
                                               PartitionSelection::kRandomK, 77);
  PartitionPlan p2 = PartitionPlan::Partitions(values, {}, 100,
                                               PartitionSelection::kRandomK, 77);
  PartitionPlan p3 = PartitionPlan::Partitions(values, {}, 100,
                                               PartitionSelection::kRandomK, 78);
  std::set<std::set<std::set<ValueId>>> seen;
  bool differs = false;
  for (size_t i = 0; i < 100; ++i) {
    CHECK(p1.At(i) == p2.At(i));
    if (!(p1.At(i) == p3.At(i))) differs = true;
    seen.insert(AsSets(p1.At(i)));
  }
  CHECK(differs);
  CHECK(seen.size() == 100);  // sampled without replacement
}

TEST_CASE("plans reject overdrawn budgets") {
  CHECK_THROWS_AS(PartitionPlan::Partitions(Ids({0, 1, 2}), {}, 4), Error);  // only 3 exist
  CHECK_THROWS_AS(PartitionPlan::Partitions(Ids({0, 1, 2}), {}, 0), Error);
}

TEST_CASE("available partition counts") {
  CHECK(PartitionPlan::AvailableFor(2) == 1);
  CHECK(PartitionPlan::AvailableFor(4) == 7);
  CHECK(PartitionPlan::AvailableFor(12) == 2047);
  CHECK(PartitionPlan::AvailableFor(1) == 0);
}
