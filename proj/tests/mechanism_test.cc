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

#include <random>
#include <sstream>

#include "doctest.h"
#include "test_fixtures.h"

using namespace bnc;
using bnc::testing::BlockPairDataset;
using bnc::testing::CountsDataset;
using bnc::testing::SixPersonDataset;

namespace {

MechanismParams Params(int r, int s, uint64_t seed, bool verify = false) {
  MechanismParams p;
  p.r = r;
  p.s = s;
  p.seed = seed;
  p.verify_contributors = verify;
  return p;
}

}  // namespace

TEST_CASE("counts at or below the suppression parameter answer as zero") {
  Dataset d = CountsDataset({3, 100, 4, 5});
  BoundedNoisyCounts mech(d, Params(2, 4, 1));
  CHECK(mech.Answer(Query().Where("a", {"v0"})) == 0);  // 3 <= 4
  CHECK(mech.Answer(Query().Where("a", {"v2"})) == 0);  // boundary: 4 <= 4
  int64_t five = mech.Answer(Query().Where("a", {"v3"}));
  CHECK(five >= 5 - 2);  // 5 > 4 is answered with noise
  CHECK(five <= 5 + 2);
  int64_t hundred = mech.Answer(Query().Where("a", {"v1"}));
  CHECK(hundred >= 98);
  CHECK(hundred <= 102);
}

TEST_CASE("repeating a query repeats its answer") {
  Dataset d = CountsDataset({50, 60, 70});
  BoundedNoisyCounts mech(d, Params(2, 4, 7));
  Query q = Query().Where("a", {"v0", "v2"});
  int64_t first = mech.Answer(q);
  for (int i = 0; i < 20; ++i) CHECK(mech.Answer(q) == first);
}

TEST_CASE("structurally different queries with equal contributors share noise") {
  Dataset d = SixPersonDataset();
  BoundedNoisyCounts mech(d, Params(1, 1, 3, /*verify=*/true));
  // Redfern and 20-29 select the same three people.
  int64_t by_suburb = mech.Answer(Query().Where("Suburb", {"Redfern"}));
  int64_t by_age = mech.Answer(Query().Where("Age", {"20-29"}));
  CHECK(by_suburb == by_age);
  // Adding a clause every contributor already satisfies changes nothing.
  int64_t with_redundant =
      mech.Answer(Query().Where("Suburb", {"Redfern"}).Where("Age", {"20-29"}));
  CHECK(with_redundant == by_suburb);
  CHECK(mech.dictionary_size() == 1);
}

TEST_CASE("distinct outputs imply distinct contributor sets") {
  Dataset d = SixPersonDataset();
  BoundedNoisyCounts mech(d, Params(1, 1, 11));
  std::vector<Query> queries = {
      Query().Where("Suburb", {"Redfern"}),
      Query().Where("Gender", {"M"}),
      Query().Where("Gender", {"F"}),
      Query().Where("Age", {"20-29", "30-39"}),
  };
  for (size_t i = 0; i < queries.size(); ++i) {
    for (size_t j = i + 1; j < queries.size(); ++j) {
      if (mech.Answer(queries[i]) != mech.Answer(queries[j])) {
        CHECK(d.Evaluate(queries[i]).contributors != d.Evaluate(queries[j]).contributors);
      }
    }
  }
}

TEST_CASE("answers satisfy the output bounds on random queries") {
  Dataset d = SixPersonDataset();
  std::mt19937_64 gen(17);
  BoundedNoisyCounts mech(d, Params(2, 2, 23));
  std::uniform_int_distribution<int> coin(0, 1);
  for (int i = 0; i < 2000; ++i) {
    Query q;
    for (AttrId a = 0; a < d.attribute_count(); ++a) {
      if (coin(gen) == 0) continue;
      std::vector<std::string> values;
      for (const std::string& label : d.labels(a)) {
        if (coin(gen) == 1) values.push_back(label);
      }
      if (!values.empty()) q.Where(d.attr_name(a), values);
    }
    QueryResult truth = d.Evaluate(q);
    int64_t answer = mech.Answer(q);
    CHECK(answer >= 0);
    CHECK(answer >= truth.count - mech.s());
    CHECK(answer <= truth.count + mech.r());
    if (answer > 0) CHECK(!truth.contributors.empty());
  }
}

TEST_CASE("same seed and query sequence give identical answers") {
  Dataset d = BlockPairDataset(30, 6);
  std::vector<Query> sequence;
  for (int b = 0; b < 30; ++b) {
    sequence.push_back(Query().Where("blk", {"b" + std::to_string(b)}));
    sequence.push_back(Query().Where("blk", {"b" + std::to_string(b)}).Where("g", {"x"}));
  }
  BoundedNoisyCounts m1(d, Params(3, 3, 555));
  BoundedNoisyCounts m2(d, Params(3, 3, 555));
  for (const Query& q : sequence) CHECK(m1.Answer(q) == m2.Answer(q));

  BoundedNoisyCounts m3(d, Params(3, 3, 556));
  bool any_diff = false;
  for (const Query& q : sequence) {
    if (m3.Answer(q) != m1.Answer(q)) any_diff = true;
  }
  CHECK(any_diff);
}

TEST_CASE("parameter validation") {
  Dataset d = CountsDataset({10});
  CHECK_THROWS_AS(BoundedNoisyCounts(d, Params(0, 4, 1)), Error);
  CHECK_THROWS_AS(BoundedNoisyCounts(d, Params(5, 3, 1)), Error);  // s < r - 1
  // s = r - 1 is the low-suppression configuration and is accepted.
  CHECK_NOTHROW(BoundedNoisyCounts(d, Params(5, 4, 1)));

  MechanismParams p = Params(2, 4, 1);
  p.distribution = NoiseDistribution({-3, 0, 3}, {0.25, 0.5, 0.25});
  CHECK_THROWS_AS(BoundedNoisyCounts(d, p), Error);  // support exceeds [-r, r]
}

TEST_CASE("analyser returns per-value answers then the total") {
  Dataset d = SixPersonDataset();
  BoundedNoisyCounts mech(d, Params(1, 1, 29));
  // Sub-population: males in Redfern; analyse two age bands.
  AttributeAnalyser analyser(mech, Query().Where("Suburb", {"Redfern"}).Where("Gender", {"M"}),
                             "Age");
  AnalyserAnswer ans = analyser.AnalyseLabels({"20-29", "30-39"});
  REQUIRE(ans.per_value.size() == 2);
  // True counts are (2, 0, 2); with r = s = 1, 2 > s gets noise, 0 suppresses.
  CHECK(ans.per_value[0] >= 1);
  CHECK(ans.per_value[0] <= 3);
  CHECK(ans.per_value[1] == 0);
  CHECK(ans.total >= 1);
  CHECK(ans.total <= 3);
}

TEST_CASE("analyser pair example: fresh noise per distinct contributor set") {
  Dataset d = SixPersonDataset();
  BoundedNoisyCounts mech(d, Params(1, 1, 31, /*verify=*/true));
  AttributeAnalyser analyser(mech, Query().Where("Suburb", {"Redfern"}), "Gender");
  AnalyserAnswer ans = analyser.AnalyseLabels({"M", "F"});
  // True values (2, 1, 3). The M and total queries have different
  // contributor sets so each draws its own noise; the count of 1 suppresses.
  CHECK(ans.per_value[0] >= 1);  // 2 +- 1
  CHECK(ans.per_value[1] == 0);  // 1 <= s suppressed
  CHECK(ans.total >= 2);         // 3 +- 1
  CHECK(mech.dictionary_size() == 2);
}

TEST_CASE("analyser with empty subset answers the sub-population query") {
  Dataset d = SixPersonDataset();
  BoundedNoisyCounts mech(d, Params(1, 1, 37));
  AttributeAnalyser analyser(mech, Query().Where("Suburb", {"Redfern"}), "Gender");
  AnalyserAnswer ans = analyser.Analyse({});
  CHECK(ans.per_value.empty());
  CHECK(ans.total >= 2);
  CHECK(ans.total <= 4);
}

TEST_CASE("analyser rejects an attribute constrained by the context") {
  Dataset d = SixPersonDataset();
  BoundedNoisyCounts mech(d, Params(1, 1, 41));
  CHECK_THROWS_AS(
      AttributeAnalyser(mech, Query().Where("Gender", {"M"}), "Gender"), Error);
}

TEST_CASE("analyser answers match the raw mechanism path") {
  Dataset d = SixPersonDataset();
  BoundedNoisyCounts m1(d, Params(1, 1, 43));
  BoundedNoisyCounts m2(d, Params(1, 1, 43));
  AttributeAnalyser analyser(m1, Query().Where("Gender", {"F"}), "Suburb");
  AnalyserAnswer ans = analyser.AnalyseLabels({"Redfern", "Newtown"});
  CHECK(ans.per_value[0] ==
        m2.Answer(Query().Where("Gender", {"F"}).Where("Suburb", {"Redfern"})));
  CHECK(ans.per_value[1] ==
        m2.Answer(Query().Where("Gender", {"F"}).Where("Suburb", {"Newtown"})));
  CHECK(ans.total ==
        m2.Answer(Query().Where("Gender", {"F"}).Where("Suburb", {"Redfern", "Newtown"})));
}

TEST_CASE("noise dictionary dump is sorted and parseable") {
  Dataset d = CountsDataset({50, 60, 70});
  BoundedNoisyCounts mech(d, Params(2, 4, 47));
  mech.Answer(Query().Where("a", {"v0"}));
  mech.Answer(Query().Where("a", {"v1"}));
  mech.Answer(Query().Where("a", {"v0", "v1", "v2"}));
  std::ostringstream out;
  mech.DumpDictionary(out);
  std::istringstream in(out.str());
  std::string digest;
  int noise = 0;
  int lines = 0;
  std::string prev;
  while (in >> digest >> noise) {
    CHECK(digest.size() == 32);
    CHECK(noise >= -2);
    CHECK(noise <= 2);
    CHECK(prev < digest);
    prev = digest;
    ++lines;
  }
  CHECK(lines == 3);
}

TEST_CASE("emitted noise matches the configured pmf") {
  // 20,000 singleton blocks, each a fresh contributor set.
  const size_t blocks = 20000;
  std::vector<int64_t> counts(blocks, 6);
  Dataset d = CountsDataset(counts);
  BoundedNoisyCounts mech(d, Params(2, 4, 53));
  AttributeAnalyser analyser(mech, Query(), "a");
  std::vector<int64_t> freq(5, 0);
  for (ValueId v = 0; v < blocks; ++v) {
    AnalyserAnswer ans = analyser.Analyse(std::span<const ValueId>(&v, 1));
    ++freq[static_cast<size_t>(ans.per_value[0] - 6 + 2)];
  }
  // Chi-square against uniform(1/5), 4 degrees of freedom: the 0.999
  // quantile is 18.47.
  double chi2 = 0.0;
  double expected = blocks / 5.0;
  for (int64_t f : freq) chi2 += (f - expected) * (f - expected) / expected;
  CHECK(chi2 < 18.47);
}
