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

#include "bnc/attacks.h"

#include <algorithm>
#include <cmath>
#include <set>

namespace bnc {
namespace {

// ceil(z / 3) for possibly negative z.
int64_t CeilDiv3(int64_t z) { return z >= 0 ? (z + 2) / 3 : -((-z) / 3); }

uint64_t ClampBudget(uint64_t wanted, uint64_t available) {
  return wanted < available ? wanted : available;
}

}  // namespace

int64_t RoundEstimate(double x, RoundingMode mode) {
  if (mode == RoundingMode::kHalfAwayFromZero) {
    return static_cast<int64_t>(x >= 0 ? std::floor(x + 0.5) : std::ceil(x - 0.5));
  }
  double floor_x = std::floor(x);
  double frac = x - floor_x;
  if (frac > 0.5) return static_cast<int64_t>(floor_x) + 1;
  if (frac < 0.5) return static_cast<int64_t>(floor_x);
  int64_t lower = static_cast<int64_t>(floor_x);
  return (lower % 2 == 0) ? lower : lower + 1;
}

ProbeScreen SelectProbes(BoundedNoisyCounts& mechanism,
                         std::span<const Query> candidates, const std::string& attr,
                         const std::string& a1, const std::string& a2) {
  ProbeScreen screen;
  std::set<int64_t> seen_answers;
  for (size_t i = 0; i < candidates.size(); ++i) {
    AttributeAnalyser analyser(mechanism, candidates[i], attr);
    AnalyserAnswer pair = analyser.AnalyseLabels({a1, a2});
    if (pair.per_value[0] <= 0 || pair.per_value[1] <= 0) {
      ++screen.dropped_zero;
      continue;
    }
    int64_t own = analyser.Analyse({}).total;
    if (!seen_answers.insert(own).second) {
      // Equal answers cannot prove distinct contributors; keep one only.
      ++screen.dropped_duplicate;
      continue;
    }
    screen.kept.push_back(i);
  }
  return screen;
}

PerturbationEstimate FindPerturbation(BoundedNoisyCounts& mechanism,
                                      std::span<const Query> probes,
                                      const std::string& attr, const std::string& a1,
                                      const std::string& a2) {
  if (probes.empty()) {
    ThrowError(ErrorKind::kParam, "perturbation finder needs at least one probe");
  }
  PerturbationEstimate est;
  est.z_min = INT64_MAX;
  est.z_max = INT64_MIN;
  for (const Query& b : probes) {
    // One analyser input (b, {a1, a2}) yields all three answers.
    AttributeAnalyser analyser(mechanism, b, attr);
    AnalyserAnswer ans = analyser.AnalyseLabels({a1, a2});
    int64_t z = ans.per_value[0] + ans.per_value[1] - ans.total;
    est.z_min = std::min(est.z_min, z);
    est.z_max = std::max(est.z_max, z);
    est.queries += 3;
  }
  // A deviation of -z beyond 3(r-1) pins r just as well as +z, so the guess
  // ceils the larger magnitude: max(ceil(-z_min / 3), ceil(z_max / 3)).
  est.r_guess = static_cast<int>(std::max(CeilDiv3(-est.z_min), CeilDiv3(est.z_max)));
  return est;
}

ValueScreen ScreenValues(AttributeAnalyser& analyser, std::span<const ValueId> values) {
  ValueScreen screen;
  AnalyserAnswer answers = analyser.Analyse(values);
  for (size_t i = 0; i < values.size(); ++i) {
    (answers.per_value[i] > 0 ? screen.nonzero : screen.zero).push_back(values[i]);
  }
  return screen;
}

RemoveNoiseResult RemoveNoiseOverPlan(AttributeAnalyser& analyser,
                                      const PartitionPlan& plan,
                                      const AttackOptions& options) {
  uint64_t k = plan.size();
  if (k == 0) ThrowError(ErrorKind::kParam, "noise remover needs k >= 1 two-partitions");
  int64_t sum = 0;
  std::vector<ValueId> side_a;
  std::vector<ValueId> side_b;
  for (uint64_t i = 0; i < k; ++i) {
    plan.Sides(i, side_a, side_b);
    sum += analyser.Analyse(side_a).total;
    sum += analyser.Analyse(side_b).total;
  }
  RemoveNoiseResult result;
  result.partitions = k;
  result.queries = 2 * k;
  result.raw_mean = static_cast<double>(sum) / static_cast<double>(k);
  result.estimate = RoundEstimate(result.raw_mean, options.rounding);
  if (result.estimate < 0 && options.clamp_negative) {
    result.estimate = 0;
    result.clamped = true;
  }
  return result;
}

RemoveNoiseResult RemoveNoise(AttributeAnalyser& analyser,
                              std::span<const ValueId> values, uint64_t k,
                              const AttackOptions& options) {
  if (k == 0) ThrowError(ErrorKind::kParam, "noise remover needs k >= 1 two-partitions");
  ValueScreen screen = ScreenValues(analyser, values);
  if (screen.nonzero.size() < 2) {
    ThrowError(ErrorKind::kParam,
               "need at least 2 values with non-zero outputs, found " +
                   std::to_string(screen.nonzero.size()) +
                   " (consider the anchored workaround)");
  }
  PartitionPlan plan =
      PartitionPlan::Partitions(screen.nonzero, screen.zero, k, options.selection,
                                options.selection_seed);
  return RemoveNoiseOverPlan(analyser, plan, options);
}

AnchoredRemoveResult RemoveNoiseAnchored(AttributeAnalyser& analyser, ValueId a,
                                         ValueId b, std::span<const ValueId> middles,
                                         uint64_t k, const AttackOptions& options) {
  AnchoredRemoveResult out;
  // A middle has non-empty contributors iff the total over {a, middle} picks
  // up fresh noise; equal answers cannot confirm that, so drop those.
  int64_t a_answer = analyser.Analyse(std::span<const ValueId>(&a, 1)).total;
  for (ValueId middle : middles) {
    std::vector<ValueId> pair = {a, middle};
    if (analyser.Analyse(pair).total != a_answer) {
      out.verified_middles.push_back(middle);
    }
  }
  if (out.verified_middles.size() < 2) {
    ThrowError(ErrorKind::kParam,
               "anchored workaround needs at least 2 middles with non-empty "
               "contributors, verified " +
                   std::to_string(out.verified_middles.size()));
  }
  PartitionPlan plan = PartitionPlan::Anchored(a, b, out.verified_middles, k,
                                               options.selection, options.selection_seed);
  out.result = RemoveNoiseOverPlan(analyser, plan, options);
  return out;
}

namespace {

RecoverResult RecoverImpl(AttributeAnalyser& analyser,
                          std::span<const ValueId> base_set, ValueId target,
                          uint64_t k, const AttackOptions& options,
                          const RemoveNoiseResult* base_estimate, bool within_base) {
  bool in_base = std::find(base_set.begin(), base_set.end(), target) != base_set.end();
  if (within_base && !in_base) {
    ThrowError(ErrorKind::kParam, "target value is not in the base set");
  }
  if (!within_base && in_base) {
    ThrowError(ErrorKind::kParam,
               "target value is in the base set; difference against the base "
               "without it instead");
  }

  RecoverResult out;
  if (base_estimate != nullptr) {
    out.base = *base_estimate;
  } else {
    out.base = RemoveNoise(analyser, base_set, k, options);
    out.queries += out.base.queries;
  }

  if (within_base) {
    std::vector<ValueId> reduced;
    for (ValueId v : base_set) {
      if (v != target) reduced.push_back(v);
    }
    uint64_t inner_k = ClampBudget(k, PartitionPlan::AvailableFor(reduced.size()));
    out.extended = RemoveNoise(analyser, reduced, inner_k, options);
    out.queries += out.extended.queries;
    out.estimate = out.base.estimate - out.extended.estimate;
  } else {
    std::vector<ValueId> extended(base_set.begin(), base_set.end());
    extended.push_back(target);
    // RemoveNoise screens the extended set itself: a zero-output target gets
    // folded in by the alternating append.
    ValueScreen screen = ScreenValues(analyser, extended);
    out.used_zero_append =
        std::find(screen.zero.begin(), screen.zero.end(), target) != screen.zero.end();
    PartitionPlan plan = PartitionPlan::Partitions(screen.nonzero, screen.zero, k,
                                                   options.selection, options.selection_seed);
    out.extended = RemoveNoiseOverPlan(analyser, plan, options);
    out.queries += out.extended.queries;
    out.estimate = out.extended.estimate - out.base.estimate;
  }
  if (out.estimate < 0 && options.clamp_negative) out.estimate = 0;
  return out;
}

}  // namespace

RecoverResult RecoverValueCount(AttributeAnalyser& analyser,
                                std::span<const ValueId> base_set, ValueId target,
                                uint64_t k, const AttackOptions& options,
                                const RemoveNoiseResult* base_estimate) {
  return RecoverImpl(analyser, base_set, target, k, options, base_estimate, false);
}

RecoverResult RecoverValueCountWithinBase(AttributeAnalyser& analyser,
                                          std::span<const ValueId> base_set,
                                          ValueId target, uint64_t k,
                                          const AttackOptions& options,
                                          const RemoveNoiseResult* base_estimate) {
  return RecoverImpl(analyser, base_set, target, k, options, base_estimate, true);
}

ReconstructionResult ReconstructHistogram(AttributeAnalyser& analyser, uint64_t k,
                                          const AttackOptions& options) {
  if (k == 0) ThrowError(ErrorKind::kParam, "histogram reconstruction needs k >= 1");
  const Dataset& data = analyser.dataset();
  AttrId attr = analyser.attribute();
  size_t domain = data.domain_size(attr);

  uint64_t raw_before = analyser.mechanism().query_count();

  std::vector<ValueId> all(domain);
  for (ValueId v = 0; v < domain; ++v) all[v] = v;
  ValueScreen screen = ScreenValues(analyser, all);

  uint64_t available = PartitionPlan::AvailableFor(screen.nonzero.size());
  // The in-base differencing partitions A' minus one value, so the budget
  // must fit the smaller set too.
  uint64_t inner_available = PartitionPlan::AvailableFor(
      screen.nonzero.empty() ? 0 : screen.nonzero.size() - 1);
  if (screen.nonzero.size() < 3 || inner_available < k) {
    ThrowError(ErrorKind::kParam,
               "no usable base subset: " + std::to_string(screen.nonzero.size()) +
                   " non-zero-output values support only " +
                   std::to_string(inner_available) + " two-partitions, need " +
                   std::to_string(k));
  }

  ReconstructionResult result;
  result.labels = data.labels(attr);
  result.estimates.assign(domain, 0);
  result.clamped.assign(domain, false);
  result.base_size = screen.nonzero.size();
  result.partitions_per_target = k;

  // One generously-budgeted estimate of the base total, reused by every
  // differenced value.
  uint64_t base_k = ClampBudget(std::max(k, options.base_partitions), available);
  PartitionPlan base_plan = PartitionPlan::Partitions(screen.nonzero, {}, base_k,
                                                      options.selection, options.selection_seed);
  RemoveNoiseResult base = RemoveNoiseOverPlan(analyser, base_plan, options);
  result.queries += base.queries;

  for (ValueId target : screen.zero) {
    RecoverResult rec = RecoverValueCount(analyser, screen.nonzero, target, k, options, &base);
    result.estimates[target] = rec.estimate;
    result.clamped[target] = rec.extended.estimate - base.estimate < 0;
    result.queries += rec.queries;
  }
  for (ValueId target : screen.nonzero) {
    RecoverResult rec =
        RecoverValueCountWithinBase(analyser, screen.nonzero, target, k, options, &base);
    result.estimates[target] = rec.estimate;
    result.clamped[target] = base.estimate - rec.extended.estimate < 0;
    result.queries += rec.queries;
  }
  result.raw_queries = analyser.mechanism().query_count() - raw_before;
  return result;
}

}  // namespace bnc
