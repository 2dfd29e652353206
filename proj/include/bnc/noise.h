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

#ifndef BNC_NOISE_H_
#define BNC_NOISE_H_

#include <cstdint>
#include <vector>

#include "bnc/error.h"
#include "bnc/rng.h"

namespace bnc {

// A zero-mean probability distribution on a finite set of integers. The
// support is sorted ascending; probabilities sum to 1 within 1e-12 and the
// mean is 0 within 1e-12 (checked at construction).
class NoiseDistribution {
 public:
  NoiseDistribution(std::vector<int> support, std::vector<double> pmf);

  // Discrete uniform on the integers [-r, r].
  static NoiseDistribution Uniform(int r);

  const std::vector<int>& support() const { return support_; }
  const std::vector<double>& pmf() const { return pmf_; }
  int min_value() const { return support_.front(); }
  int max_value() const { return support_.back(); }
  double variance() const;
  double entropy_bits() const;

  // Inverse-CDF draw from a 64-bit uniform source.
  int Sample(Rng& rng) const;

 private:
  std::vector<int> support_;
  std::vector<double> pmf_;
  std::vector<double> cdf_;
};

// The entropy-maximising distribution on `support` subject to
// sum(p) = 1, mean = 0, and variance <= variance_bound. Solved by matching
// moments of the exponential family p(e) ~ exp(s*e + t*e^2): the mean
// multiplier is found by bisection for each variance multiplier, and the
// variance multiplier by outer bisection when the variance constraint is
// active. Converges to KKT residuals below 1e-9.
//
// Raises kInfeasible when no zero-mean distribution on the support can meet
// the variance bound.
NoiseDistribution SolveMaxEntropy(const std::vector<int>& support,
                                  double variance_bound);

}  // namespace bnc

#endif  // BNC_NOISE_H_
