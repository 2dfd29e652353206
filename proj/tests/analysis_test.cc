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

#include "bnc/analysis.h"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>

#include "bnc/error.h"
#include "bnc/synthetic.h"
#include "doctest.h"

using namespace bnc;

namespace {

using BigInt = boost::multiprecision::cpp_int;

// Exact-rational oracle: the number of 2k-term tuples from [-r, r] summing
// to each value, by integer convolution. Success probability is the central
// tuple count over (2r+1)^(2k).
double ExactSuccessOracle(int r, int64_t k) {
  int64_t terms = 2 * k;
  std::vector<BigInt> weights(2 * r + 1, BigInt(1));
  for (int64_t step = 1; step < terms; ++step) {
    std::vector<BigInt> next(weights.size() + 2 * r, BigInt(0));
    for (size_t i = 0; i < weights.size(); ++i) {
      for (int e = 0; e <= 2 * r; ++e) next[i + e] += weights[i];
    }
    weights = std::move(next);
  }
  int64_t center = terms * r;
  int64_t bound = (k - 1) / 2;
  BigInt favourable = 0;
  for (int64_t x = center - bound; x <= center + bound; ++x) {
    favourable += weights[static_cast<size_t>(x)];
  }
  BigInt total = 1;
  for (int64_t i = 0; i < terms; ++i) total *= (2 * r + 1);
  return favourable.convert_to<double>() / total.convert_to<double>();
}

}  // namespace

TEST_CASE("extreme tuple count is 20 for every perturbation") {
  CHECK(CountExtremeTuples(1) == 20);
  CHECK(CountExtremeTuples(2) == 20);
  CHECK(CountExtremeTuples(5) == 20);
  CHECK(CountExtremeTuples(10) == 20);
  CHECK_THROWS_AS(CountExtremeTuples(0), Error);
}

TEST_CASE("finder success matches direct evaluation") {
  CHECK(PerturbationFinderSuccess(1, 1) == doctest::Approx(20.0 / 27.0).epsilon(1e-12));
  // Direct power evaluation as an independent route.
  double direct = 1.0 - std::pow(1.0 - 20.0 / 125.0, 100);
  CHECK(PerturbationFinderSuccess(2, 100) == doctest::Approx(direct).epsilon(1e-12));
  CHECK(1.0 - PerturbationFinderSuccess(2, 100) == doctest::Approx(2.68e-8).epsilon(0.01));

  // Monotone in m with limit 1.
  double prev = 0.0;
  for (int64_t m : {1, 10, 100, 1000}) {
    double p = PerturbationFinderSuccess(3, m);
    CHECK(p > prev);
    prev = p;
  }
  CHECK(PerturbationFinderSuccess(3, 1000000) == doctest::Approx(1.0));
}

TEST_CASE("chebyshev bound values") {
  CHECK(ChebyshevLowerBound(2, 64) == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(ChebyshevLowerBound(2, 16) == 0.0);  // vacuous, clamped
  CHECK(ChebyshevLowerBound(1, 1000) == doctest::Approx(1.0 - 16.0 / 3000.0));
}

TEST_CASE("two-term uniform convolution enumerates ninths") {
  Pmf pmf = ConvolveUniformSum(1, 2);
  CHECK(pmf.offset == -2);
  REQUIRE(pmf.masses.size() == 5);
  CHECK(pmf.At(0) == doctest::Approx(3.0 / 9.0).epsilon(1e-14));
  CHECK(pmf.At(1) == doctest::Approx(2.0 / 9.0).epsilon(1e-14));
  CHECK(pmf.At(-1) == doctest::Approx(2.0 / 9.0).epsilon(1e-14));
  CHECK(pmf.At(2) == doctest::Approx(1.0 / 9.0).epsilon(1e-14));
  CHECK(pmf.At(-2) == doctest::Approx(1.0 / 9.0).epsilon(1e-14));
}

TEST_CASE("single-term convolution is the uniform itself") {
  Pmf pmf = ConvolveUniformSum(3, 1);
  CHECK(pmf.offset == -3);
  REQUIRE(pmf.masses.size() == 7);
  for (double m : pmf.masses) CHECK(m == doctest::Approx(1.0 / 7.0).epsilon(1e-14));
}

TEST_CASE("convolutions keep their mass and analytic variance") {
  for (int r : {1, 2, 5, 10}) {
    for (int64_t count : {2, 10, 100, 400}) {
      Pmf pmf = ConvolveUniformSum(r, count);
      CHECK(std::abs(pmf.Sum() - 1.0) < 1e-10);
      CHECK(std::abs(pmf.Mean()) < 1e-9);
      double expected_var = static_cast<double>(count) * r * (r + 1) / 3.0;
      CHECK(std::abs(pmf.Variance() - expected_var) / expected_var < 1e-8);
    }
  }
}

TEST_CASE("oversized supports are rejected") {
  CHECK_THROWS_AS(ConvolveUniformSum(10, 100000), Error);
}

TEST_CASE("exact success probability basics") {
  CHECK(NoiseRemoverExactSuccess(1, 1) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  // The published per-target figure for k = 200 is this value rounded to
  // four decimals.
  double p200 = NoiseRemoverExactSuccess(2, 200);
  CHECK(p200 == doctest::Approx(0.9995732).epsilon(1e-5));
  CHECK(std::round(p200 * 1e4) / 1e4 >= 0.9996);

  // The strict |x| < k/2 cutoff gains an integer only on even-to-odd steps,
  // so the success curve saw-tooths; it is monotone within each parity.
  double prev_even = 0.0;
  double prev_odd = 0.0;
  ForEachExactSuccess(2, 256, [&](int64_t k, double p) {
    double& prev = (k % 2 == 0) ? prev_even : prev_odd;
    CHECK(p >= prev - 1e-12);
    prev = p;
  });
}

TEST_CASE("exact success matches the rational oracle") {
  for (int r : {1, 2, 5}) {
    for (int64_t k : {1, 2, 3, 5, 8, 16, 32, 64}) {
      CHECK(NoiseRemoverExactSuccess(r, k) ==
            doctest::Approx(ExactSuccessOracle(r, k)).epsilon(1e-11));
    }
  }
}

TEST_CASE("chebyshev never exceeds the exact probability") {
  for (int r = 1; r <= 10; ++r) {
    ForEachExactSuccess(r, 2048, [&](int64_t k, double exact) {
      CHECK(ChebyshevLowerBound(r, k) <= exact + 1e-12);
    });
  }
}

TEST_CASE("union bounds") {
  CHECK(HistogramUnionBound(1.0, 50) == 1.0);
  CHECK(HistogramUnionBound(0.5, 1) == 0.0);
  CHECK(SingleTargetUnionBound(0.5) == 0.0);
  CHECK(SingleTargetUnionBound(0.99) == doctest::Approx(0.98));
  CHECK_THROWS_AS(HistogramUnionBound(1.5, 10), Error);

  // The published "at least 0.959 that all 107 values are correct at
  // k = 200": with the strict |x| < k/2 cutoff the union bound over 107
  // runs evaluates to 0.9543; the rounder 0.96 needs the tie states
  // |x| = k/2 included. Check both routes.
  double strict = NoiseRemoverExactSuccess(2, 200);
  CHECK(HistogramUnionBound(strict, 106) == doctest::Approx(0.9543).epsilon(1e-3));
  Pmf pmf = ConvolveUniformSum(2, 400);
  double inclusive = strict + pmf.At(100) + pmf.At(-100);
  CHECK(HistogramUnionBound(inclusive, 106) >= 0.959);
}

TEST_CASE("minimum noise scale") {
  NoiseScaleRequirement req = MinNoiseScale(400);
  CHECK(req.c == 20);
  CHECK(req.variance_bound == doctest::Approx(4.0));
  CHECK(MinNoiseScale(401).c == 21);
  CHECK(MinNoiseScale(1).c == 1);
  CHECK_THROWS_AS(MinNoiseScale(0), Error);
}

TEST_CASE("predicted mean correct tracks the published protocol shape") {
  const auto& counts = AgeStandinCounts();
  double p200 = PredictedMeanCorrect(counts, 2, 200, 1000);
  CHECK(p200 > 110.5);
  CHECK(p200 <= 111.0);
  double p50r5 = PredictedMeanCorrect(counts, 5, 50, 1000);
  CHECK(p50r5 > 60.0);
  CHECK(p50r5 < 80.0);
  // More partitions help; more noise hurts.
  CHECK(PredictedMeanCorrect(counts, 2, 200, 1000) >
        PredictedMeanCorrect(counts, 2, 50, 1000));
  CHECK(PredictedMeanCorrect(counts, 2, 50, 1000) >
        PredictedMeanCorrect(counts, 5, 50, 1000));
}
