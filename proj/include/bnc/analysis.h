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

#ifndef BNC_ANALYSIS_H_
#define BNC_ANALYSIS_H_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace bnc {

// Probability mass function on a contiguous integer range
// [offset, offset + masses.size()).
struct Pmf {
  int64_t offset = 0;
  std::vector<double> masses;

  double At(int64_t x) const {
    int64_t i = x - offset;
    if (i < 0 || i >= static_cast<int64_t>(masses.size())) return 0.0;
    return masses[static_cast<size_t>(i)];
  }
  double Sum() const;
  double Mean() const;
  double Variance() const;
};

// Number of noise triples (e1, e2, e3) in [-r, r]^3 with |e1 + e2 + e3|
// beyond 3(r - 1), counted by exhaustive enumeration. Equals 20 for every r.
int64_t CountExtremeTuples(int r);

// Probability that the perturbation finder returns exactly r after m probes:
// 1 - (1 - 20 / (2r+1)^3)^m.
double PerturbationFinderSuccess(int r, int64_t m);

// Chebyshev lower bound on the noise remover success with k two-partitions:
// max(0, 1 - 8 r (r+1) / (3k)).
double ChebyshevLowerBound(int r, int64_t k);

// Pmf of the sum of `count` iid uniforms on the integers [-r, r], by
// iterated discrete convolution (each step is a sliding-window average).
// The support is renormalised and checked to sum to 1 within 1e-10 at every
// step; supports beyond 1e6 points are rejected.
Pmf ConvolveUniformSum(int r, int64_t count);

// Exact noise remover success probability with k two-partitions: the mass of
// the sum of 2k iid uniforms on the integers x with |x| < k/2 (strict).
double NoiseRemoverExactSuccess(int r, int64_t k);

// Evaluates NoiseRemoverExactSuccess for every k in 1..k_max with a single
// incremental convolution sweep.
void ForEachExactSuccess(int r, int64_t k_max,
                         const std::function<void(int64_t k, double p)>& fn);

// Union bounds on composite success. The histogram over m values needs m + 1
// noise-remover runs; a single target needs 2.
double HistogramUnionBound(double p_nr, int64_t m);
double SingleTargetUnionBound(double p_nr);

// Minimum noise scale to withstand averaging over t queries: the noise
// remover's averaged error has variance at most 4 c^2 / t when the maximum
// absolute perturbation is c, so c must grow like sqrt(t).
struct NoiseScaleRequirement {
  int64_t c = 0;               // ceil(sqrt(t))
  double variance_bound = 0.0; // 4 c^2 / t
};
NoiseScaleRequirement MinNoiseScale(int64_t t);

// Expected number of exactly recovered values in a histogram attack that
// differences every value against one base total estimated with base_k
// partitions: per-value success is the exact noise-remover probability, and
// a true-zero value additionally survives any negative raw estimate through
// clamping.
double PredictedMeanCorrect(std::span<const int64_t> true_counts, int r, int64_t k,
                            int64_t base_k);

}  // namespace bnc

#endif  // BNC_ANALYSIS_H_
