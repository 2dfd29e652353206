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

#include "bnc/noise.h"

#include <cmath>

#include "doctest.h"

using namespace bnc;

TEST_CASE("uniform distribution has the textbook moments") {
  for (int r = 1; r <= 10; ++r) {
    NoiseDistribution u = NoiseDistribution::Uniform(r);
    CHECK(u.support().size() == static_cast<size_t>(2 * r + 1));
    CHECK(u.variance() == doctest::Approx(r * (r + 1) / 3.0).epsilon(1e-12));
    for (double p : u.pmf()) CHECK(p == doctest::Approx(1.0 / (2 * r + 1)));
  }
}

TEST_CASE("construction rejects non-distributions") {
  CHECK_THROWS_AS(NoiseDistribution({-1, 0, 1}, {0.5, 0.1, 0.5}), Error);   // sum != 1
  CHECK_THROWS_AS(NoiseDistribution({-1, 0, 1}, {0.5, 0.5, 0.0}), Error);   // mean != 0
  CHECK_THROWS_AS(NoiseDistribution({-1, 1, 1}, {0.5, 0.25, 0.25}), Error); // duplicate
  CHECK_THROWS_AS(NoiseDistribution({-1, 1}, {1.5, -0.5}), Error);          // negative mass
}

TEST_CASE("max entropy with a loose variance bound is uniform") {
  for (int r = 1; r <= 10; ++r) {
    std::vector<int> support;
    for (int e = -r; e <= r; ++e) support.push_back(e);
    double v = r * (r + 1) / 3.0;  // exactly the uniform variance
    NoiseDistribution d = SolveMaxEntropy(support, v);
    for (double p : d.pmf()) {
      CHECK(p == doctest::Approx(1.0 / (2 * r + 1)).epsilon(1e-9));
    }
    // Any slack above the uniform variance changes nothing.
    NoiseDistribution loose = SolveMaxEntropy(support, v + 10.0);
    for (double p : loose.pmf()) CHECK(p == doctest::Approx(1.0 / (2 * r + 1)).epsilon(1e-9));
  }
}

TEST_CASE("zero variance forces the point mass at zero") {
  NoiseDistribution d = SolveMaxEntropy({-2, -1, 0, 1, 2}, 0.0);
  CHECK(d.variance() == doctest::Approx(0.0));
  for (size_t i = 0; i < d.support().size(); ++i) {
    CHECK(d.pmf()[i] == doctest::Approx(d.support()[i] == 0 ? 1.0 : 0.0));
  }
}

TEST_CASE("active variance bound on {-1,0,1} gives (v/2, 1-v, v/2)") {
  // With mean 0 the symmetric masses are pinned by the variance, and entropy
  // increases all the way up to the bound, so the bound is tight.
  NoiseDistribution d = SolveMaxEntropy({-1, 0, 1}, 0.5);
  REQUIRE(d.support() == std::vector<int>{-1, 0, 1});
  CHECK(d.pmf()[0] == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(d.pmf()[1] == doctest::Approx(0.50).epsilon(1e-9));
  CHECK(d.pmf()[2] == doctest::Approx(0.25).epsilon(1e-9));

  // Independent check: grid-search the one-parameter family
  // p(-1) = p(1) = a, p(0) = 1 - 2a with a <= 0.25.
  double best_a = 0.0;
  double best_h = -1.0;
  for (double a = 0.0005; a <= 0.25 + 1e-12; a += 0.0005) {
    double h = -2 * a * std::log(a) - (1 - 2 * a) * std::log(1 - 2 * a);
    if (h > best_h) {
      best_h = h;
      best_a = a;
    }
  }
  CHECK(best_a == doctest::Approx(0.25).epsilon(1e-3));
}

TEST_CASE("asymmetric supports still match moments") {
  NoiseDistribution d = SolveMaxEntropy({-1, 0, 3}, 2.0);
  double mean = 0.0;
  for (size_t i = 0; i < d.support().size(); ++i) mean += d.support()[i] * d.pmf()[i];
  CHECK(mean == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(d.variance() <= 2.0 + 1e-9);
}

TEST_CASE("infeasible constraints are rejected") {
  CHECK_THROWS_AS(SolveMaxEntropy({-1, 0, 1}, -0.5), Error);  // negative bound
  CHECK_THROWS_AS(SolveMaxEntropy({1, 2, 3}, 1.0), Error);    // no negative support
  CHECK_THROWS_AS(SolveMaxEntropy({-2, -1}, 1.0), Error);     // no positive support
  CHECK_THROWS_AS(SolveMaxEntropy({-1, 1}, 0.5), Error);      // min variance is 1
  try {
    SolveMaxEntropy({1, 2, 3}, 1.0);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kInfeasible);
  }
}

TEST_CASE("only-zero support degenerates cleanly") {
  NoiseDistribution d = SolveMaxEntropy({0}, 5.0);
  CHECK(d.support() == std::vector<int>{0});
  CHECK(d.pmf()[0] == doctest::Approx(1.0));
}

TEST_CASE("boundary variance without zero pins the inner sign pair") {
  NoiseDistribution d = SolveMaxEntropy({-3, -1, 2, 5}, 2.0);  // min variance = 1*2
  double mean = 0.0;
  for (size_t i = 0; i < d.support().size(); ++i) mean += d.support()[i] * d.pmf()[i];
  CHECK(mean == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(d.variance() == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("inverse-cdf sampling tracks the pmf") {
  NoiseDistribution d = SolveMaxEntropy({-1, 0, 1}, 0.5);
  Rng rng(99);
  int counts[3] = {0, 0, 0};
  const int n = 200000;
  for (int i = 0; i < n; ++i) ++counts[d.Sample(rng) + 1];
  // 5-sigma bands around 0.25 / 0.5 / 0.25.
  CHECK(std::abs(counts[0] / double(n) - 0.25) < 5 * std::sqrt(0.25 * 0.75 / n));
  CHECK(std::abs(counts[1] / double(n) - 0.50) < 5 * std::sqrt(0.5 * 0.5 / n));
  CHECK(std::abs(counts[2] / double(n) - 0.25) < 5 * std::sqrt(0.25 * 0.75 / n));
}
