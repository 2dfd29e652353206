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

#include <cmath>
#include <string>

#include "bnc/error.h"

namespace bnc {
namespace {

constexpr int64_t kMaxSupportPoints = 1000000;

// Incremental convolution state: the pmf of the sum of `count` uniforms.
class UniformSumSweep {
 public:
  explicit UniformSumSweep(int r) : r_(r), mass_(2 * r + 1, 1.0 / (2 * r + 1)) {}

  int64_t count() const { return count_; }
  const std::vector<double>& mass() const { return mass_; }

  // Convolves one more uniform term in: a sliding-window average over the
  // current support, via prefix sums.
  void Step() {
    int64_t old_len = static_cast<int64_t>(mass_.size());
    int64_t new_len = old_len + 2 * r_;
    if (new_len > kMaxSupportPoints) {
      ThrowError(ErrorKind::kParam,
                 "convolution support would exceed " +
                     std::to_string(kMaxSupportPoints) + " points");
    }
    prefix_.resize(static_cast<size_t>(old_len) + 1);
    long double acc = 0.0L;
    prefix_[0] = 0.0L;
    for (int64_t i = 0; i < old_len; ++i) {
      acc += mass_[static_cast<size_t>(i)];
      prefix_[static_cast<size_t>(i) + 1] = acc;
    }
    std::vector<double> next(static_cast<size_t>(new_len));
    double inv = 1.0 / (2 * r_ + 1);
    for (int64_t j = 0; j < new_len; ++j) {
      int64_t lo = std::max<int64_t>(j - 2 * r_, 0);
      int64_t hi = std::min<int64_t>(j, old_len - 1);
      next[static_cast<size_t>(j)] = static_cast<double>(
          (prefix_[static_cast<size_t>(hi) + 1] - prefix_[static_cast<size_t>(lo)]) * inv);
    }
    mass_ = std::move(next);
    ++count_;
    Renormalise();
  }

  // Mass on integers |x| <= bound.
  double CentralMass(int64_t bound) const {
    int64_t center = count_ * r_;
    long double sum = 0.0L;
    int64_t lo = std::max<int64_t>(center - bound, 0);
    int64_t hi = std::min<int64_t>(center + bound, static_cast<int64_t>(mass_.size()) - 1);
    for (int64_t i = lo; i <= hi; ++i) sum += mass_[static_cast<size_t>(i)];
    return static_cast<double>(sum);
  }

 private:
  void Renormalise() {
    long double sum = 0.0L;
    for (double m : mass_) sum += m;
    if (std::abs(static_cast<double>(sum) - 1.0) > 1e-10) {
      ThrowError(ErrorKind::kInvariant,
                 "convolution mass drifted to " + std::to_string(static_cast<double>(sum)));
    }
    double inv = static_cast<double>(1.0L / sum);
    for (double& m : mass_) m *= inv;
  }

  int r_;
  int64_t count_ = 1;
  std::vector<double> mass_;
  std::vector<long double> prefix_;
};

void CheckR(int r) {
  if (r < 1) ThrowError(ErrorKind::kParam, "perturbation parameter must be >= 1");
}

}  // namespace

double Pmf::Sum() const {
  long double sum = 0.0L;
  for (double m : masses) sum += m;
  return static_cast<double>(sum);
}

double Pmf::Mean() const {
  long double mean = 0.0L;
  for (size_t i = 0; i < masses.size(); ++i) {
    mean += static_cast<long double>(offset + static_cast<int64_t>(i)) * masses[i];
  }
  return static_cast<double>(mean);
}

double Pmf::Variance() const {
  long double mean = Mean();
  long double var = 0.0L;
  for (size_t i = 0; i < masses.size(); ++i) {
    long double d = static_cast<long double>(offset + static_cast<int64_t>(i)) - mean;
    var += d * d * masses[i];
  }
  return static_cast<double>(var);
}

int64_t CountExtremeTuples(int r) {
  CheckR(r);
  int64_t threshold = 3 * (static_cast<int64_t>(r) - 1);
  int64_t count = 0;
  for (int e1 = -r; e1 <= r; ++e1) {
    for (int e2 = -r; e2 <= r; ++e2) {
      for (int e3 = -r; e3 <= r; ++e3) {
        int64_t sum = static_cast<int64_t>(e1) + e2 + e3;
        if (sum > threshold || sum < -threshold) ++count;
      }
    }
  }
  return count;
}

double PerturbationFinderSuccess(int r, int64_t m) {
  CheckR(r);
  if (m < 1) ThrowError(ErrorKind::kParam, "probe count must be >= 1");
  double side = 2.0 * r + 1.0;
  double p_extreme = 20.0 / (side * side * side);
  return -std::expm1(static_cast<double>(m) * std::log1p(-p_extreme));
}

double ChebyshevLowerBound(int r, int64_t k) {
  CheckR(r);
  if (k < 1) ThrowError(ErrorKind::kParam, "partition count must be >= 1");
  double bound = 1.0 - (8.0 * r * (r + 1.0)) / (3.0 * static_cast<double>(k));
  return bound > 0.0 ? bound : 0.0;
}

Pmf ConvolveUniformSum(int r, int64_t count) {
  CheckR(r);
  if (count < 1) ThrowError(ErrorKind::kParam, "term count must be >= 1");
  if (2 * count * static_cast<int64_t>(r) + 1 > kMaxSupportPoints) {
    ThrowError(ErrorKind::kParam, "convolution support would exceed " +
                                      std::to_string(kMaxSupportPoints) + " points");
  }
  UniformSumSweep sweep(r);
  while (sweep.count() < count) sweep.Step();
  Pmf pmf;
  pmf.offset = -count * r;
  pmf.masses = sweep.mass();
  return pmf;
}

double NoiseRemoverExactSuccess(int r, int64_t k) {
  CheckR(r);
  if (k < 1) ThrowError(ErrorKind::kParam, "partition count must be >= 1");
  UniformSumSweep sweep(r);
  while (sweep.count() < 2 * k) sweep.Step();
  // |x| < k/2 over the integers is |x| <= (k - 1) / 2 for both parities.
  return sweep.CentralMass((k - 1) / 2);
}

void ForEachExactSuccess(int r, int64_t k_max,
                         const std::function<void(int64_t, double)>& fn) {
  CheckR(r);
  if (k_max < 1) ThrowError(ErrorKind::kParam, "partition count must be >= 1");
  UniformSumSweep sweep(r);
  for (int64_t k = 1; k <= k_max; ++k) {
    while (sweep.count() < 2 * k) sweep.Step();
    fn(k, sweep.CentralMass((k - 1) / 2));
  }
}

double HistogramUnionBound(double p_nr, int64_t m) {
  if (p_nr < 0.0 || p_nr > 1.0) {
    ThrowError(ErrorKind::kParam, "probability out of [0, 1]");
  }
  if (m < 1) ThrowError(ErrorKind::kParam, "attribute value count must be >= 1");
  double bound = 1.0 - static_cast<double>(m + 1) * (1.0 - p_nr);
  return bound > 0.0 ? bound : 0.0;
}

double SingleTargetUnionBound(double p_nr) {
  if (p_nr < 0.0 || p_nr > 1.0) {
    ThrowError(ErrorKind::kParam, "probability out of [0, 1]");
  }
  double bound = 1.0 - 2.0 * (1.0 - p_nr);
  return bound > 0.0 ? bound : 0.0;
}

NoiseScaleRequirement MinNoiseScale(int64_t t) {
  if (t < 1) ThrowError(ErrorKind::kParam, "query budget must be >= 1");
  int64_t c = static_cast<int64_t>(std::sqrt(static_cast<double>(t)));
  while (c * c < t) ++c;
  while (c > 1 && (c - 1) * (c - 1) >= t) --c;
  NoiseScaleRequirement req;
  req.c = c;
  req.variance_bound = 4.0 * static_cast<double>(c) * static_cast<double>(c) /
                       static_cast<double>(t);
  return req;
}

double PredictedMeanCorrect(std::span<const int64_t> true_counts, int r, int64_t k,
                            int64_t base_k) {
  double p = NoiseRemoverExactSuccess(r, k);
  double p_base = NoiseRemoverExactSuccess(r, base_k);
  double expected = 0.0;
  for (int64_t count : true_counts) {
    expected += (count == 0) ? 0.5 * (1.0 + p) : p;
  }
  return p_base * expected;
}

}  // namespace bnc
