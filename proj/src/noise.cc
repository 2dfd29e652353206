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

#include <algorithm>
#include <cmath>
#include <string>

namespace bnc {
namespace {

constexpr double kSumTol = 1e-12;
constexpr double kMeanTol = 1e-12;
constexpr double kKktTol = 1e-9;

// Moments of p(e) ~ exp(s*e + t*e^2) on `support`, computed with the max
// exponent subtracted so large multipliers do not overflow.
struct Moments {
  std::vector<double> pmf;
  double mean = 0.0;
  double second = 0.0;  // E[e^2]
};

Moments Tilt(const std::vector<int>& support, double s, double t) {
  Moments m;
  m.pmf.resize(support.size());
  double max_exp = -1e300;
  for (size_t i = 0; i < support.size(); ++i) {
    double e = support[i];
    double x = s * e + t * e * e;
    m.pmf[i] = x;
    max_exp = std::max(max_exp, x);
  }
  double z = 0.0;
  for (double& x : m.pmf) {
    x = std::exp(x - max_exp);
    z += x;
  }
  for (size_t i = 0; i < support.size(); ++i) {
    m.pmf[i] /= z;
    m.mean += support[i] * m.pmf[i];
    m.second += static_cast<double>(support[i]) * support[i] * m.pmf[i];
  }
  return m;
}

// Mean is strictly increasing in s; bisect for mean == 0.
Moments SolveMeanMultiplier(const std::vector<int>& support, double t) {
  double lo = -1.0;
  double hi = 1.0;
  while (Tilt(support, lo, t).mean > 0) lo *= 2.0;
  while (Tilt(support, hi, t).mean < 0) hi *= 2.0;
  Moments m = Tilt(support, 0.0, t);
  if (m.mean == 0.0) return m;
  for (int iter = 0; iter < 200; ++iter) {
    double mid = 0.5 * (lo + hi);
    m = Tilt(support, mid, t);
    if (m.mean == 0.0) break;
    (m.mean < 0 ? lo : hi) = mid;
    if (hi - lo < 1e-16 * std::max(1.0, std::abs(lo))) break;
  }
  return m;
}

}  // namespace

NoiseDistribution::NoiseDistribution(std::vector<int> support, std::vector<double> pmf)
    : support_(std::move(support)), pmf_(std::move(pmf)) {
  if (support_.empty() || support_.size() != pmf_.size()) {
    ThrowError(ErrorKind::kParam, "noise distribution needs one mass per support point");
  }
  // Sort support (carrying masses) and reject duplicates.
  std::vector<size_t> order(support_.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](size_t x, size_t y) { return support_[x] < support_[y]; });
  std::vector<int> sorted_support(support_.size());
  std::vector<double> sorted_pmf(pmf_.size());
  for (size_t i = 0; i < order.size(); ++i) {
    sorted_support[i] = support_[order[i]];
    sorted_pmf[i] = pmf_[order[i]];
  }
  support_ = std::move(sorted_support);
  pmf_ = std::move(sorted_pmf);
  for (size_t i = 1; i < support_.size(); ++i) {
    if (support_[i] == support_[i - 1]) {
      ThrowError(ErrorKind::kParam, "duplicate support point " + std::to_string(support_[i]));
    }
  }

  double sum = 0.0;
  double mean = 0.0;
  for (size_t i = 0; i < pmf_.size(); ++i) {
    if (pmf_[i] < -1e-15) {
      ThrowError(ErrorKind::kParam, "negative probability mass");
    }
    if (pmf_[i] < 0) pmf_[i] = 0.0;
    sum += pmf_[i];
    mean += pmf_[i] * support_[i];
  }
  if (std::abs(sum - 1.0) > kSumTol) {
    ThrowError(ErrorKind::kParam, "probabilities sum to " + std::to_string(sum) + ", not 1");
  }
  if (std::abs(mean) > kMeanTol) {
    ThrowError(ErrorKind::kParam, "distribution mean " + std::to_string(mean) + " is not 0");
  }

  cdf_.resize(pmf_.size());
  double acc = 0.0;
  for (size_t i = 0; i < pmf_.size(); ++i) {
    acc += pmf_[i];
    cdf_[i] = acc;
  }
  cdf_.back() = 1.0;
}

NoiseDistribution NoiseDistribution::Uniform(int r) {
  if (r < 1) ThrowError(ErrorKind::kParam, "perturbation parameter must be >= 1");
  std::vector<int> support;
  std::vector<double> pmf;
  for (int e = -r; e <= r; ++e) {
    support.push_back(e);
    pmf.push_back(1.0 / (2 * r + 1));
  }
  return NoiseDistribution(std::move(support), std::move(pmf));
}

double NoiseDistribution::variance() const {
  double var = 0.0;
  for (size_t i = 0; i < pmf_.size(); ++i) {
    var += pmf_[i] * static_cast<double>(support_[i]) * support_[i];
  }
  return var;  // mean is 0
}

double NoiseDistribution::entropy_bits() const {
  double h = 0.0;
  for (double p : pmf_) {
    if (p > 0) h -= p * std::log2(p);
  }
  return h;
}

int NoiseDistribution::Sample(Rng& rng) const {
  double u = rng.NextDouble();
  size_t idx = static_cast<size_t>(
      std::upper_bound(cdf_.begin(), cdf_.end(), u) - cdf_.begin());
  if (idx >= support_.size()) idx = support_.size() - 1;
  return support_[idx];
}

NoiseDistribution SolveMaxEntropy(const std::vector<int>& support,
                                  double variance_bound) {
  if (support.empty()) ThrowError(ErrorKind::kInfeasible, "empty support");
  if (variance_bound < 0) {
    ThrowError(ErrorKind::kInfeasible, "variance bound must be non-negative");
  }
  std::vector<int> pts = support;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  bool has_zero = std::binary_search(pts.begin(), pts.end(), 0);
  int max_neg = 0;
  int min_pos = 0;
  for (int e : pts) {
    if (e < 0 && (max_neg == 0 || e > max_neg)) max_neg = e;
    if (e > 0 && (min_pos == 0 || e < min_pos)) min_pos = e;
  }

  auto masked = [&](const std::vector<int>& keep, const std::vector<double>& masses) {
    std::vector<double> pmf(pts.size(), 0.0);
    for (size_t i = 0; i < keep.size(); ++i) {
      size_t idx = static_cast<size_t>(
          std::lower_bound(pts.begin(), pts.end(), keep[i]) - pts.begin());
      pmf[idx] = masses[i];
    }
    return NoiseDistribution(pts, pmf);
  };

  if (max_neg == 0 || min_pos == 0) {
    // No sign balance available: only the point mass at 0 has mean 0.
    if (has_zero) return masked({0}, {1.0});
    ThrowError(ErrorKind::kInfeasible,
               "support has no sign balance, zero mean is impossible");
  }

  // Smallest variance any zero-mean distribution on this support can have.
  double min_variance =
      has_zero ? 0.0 : static_cast<double>(-max_neg) * static_cast<double>(min_pos);
  if (variance_bound < min_variance - 1e-12) {
    ThrowError(ErrorKind::kInfeasible,
               "variance bound " + std::to_string(variance_bound) +
                   " is below the minimum achievable " + std::to_string(min_variance));
  }

  if (has_zero && variance_bound == 0.0) return masked({0}, {1.0});
  if (!has_zero && variance_bound <= min_variance + 1e-12) {
    // Boundary case: all mass pinned on the innermost sign pair.
    double span = static_cast<double>(min_pos) - max_neg;
    return masked({max_neg, min_pos}, {min_pos / span, -max_neg / span});
  }

  // Unconstrained-variance solution first (variance multiplier 0).
  Moments m0 = SolveMeanMultiplier(pts, 0.0);
  if (m0.second <= variance_bound + kKktTol) {
    return NoiseDistribution(pts, m0.pmf);
  }

  // Variance constraint is active: E[e^2] shrinks as t gets more negative.
  double t_hi = 0.0;
  double t_lo = -1.0;
  while (SolveMeanMultiplier(pts, t_lo).second > variance_bound) {
    t_lo *= 2.0;
    if (t_lo < -1e8) {
      ThrowError(ErrorKind::kInfeasible, "variance bound unreachable");
    }
  }
  Moments m = m0;
  for (int iter = 0; iter < 200; ++iter) {
    double mid = 0.5 * (t_lo + t_hi);
    m = SolveMeanMultiplier(pts, mid);
    (m.second > variance_bound ? t_hi : t_lo) = mid;
    if (t_hi - t_lo < 1e-15 * std::max(1.0, std::abs(t_lo))) break;
  }
  m = SolveMeanMultiplier(pts, t_lo);  // feasible side of the bracket
  if (std::abs(m.mean) > kKktTol || m.second > variance_bound + kKktTol) {
    ThrowError(ErrorKind::kInvariant, "max-entropy solver failed to converge");
  }
  return NoiseDistribution(pts, m.pmf);
}

}  // namespace bnc
