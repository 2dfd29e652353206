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

#ifndef BNC_ATTACKS_H_
#define BNC_ATTACKS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bnc/mechanism.h"
#include "bnc/partitions.h"

namespace bnc {

// Everything here drives the mechanism strictly through AttributeAnalyser /
// BoundedNoisyCounts answers. True counts are never read; scoring against
// the dataset happens in the harness after the attack is done.

enum class RoundingMode {
  kHalfAwayFromZero,  // default; 0.5 -> 1, -0.5 -> -1
  kHalfToEven,
};

int64_t RoundEstimate(double x, RoundingMode mode);

struct AttackOptions {
  PartitionSelection selection = PartitionSelection::kFirstK;
  uint64_t selection_seed = 0;
  RoundingMode rounding = RoundingMode::kHalfAwayFromZero;
  bool clamp_negative = true;
  // Two-partition budget for the one-off base-set estimate in histogram
  // reconstruction (raised above k because every differenced value reuses
  // it). Clamped to what the base set allows.
  uint64_t base_partitions = 1000;
};

// ---------------------------------------------------------------------------
// Attack 1: recovering the hidden perturbation parameter.

struct ProbeScreen {
  // Indices into the candidate list that survived screening: both pair
  // sub-queries answered non-zero, and the probe's own answer distinct from
  // every earlier kept probe's answer.
  std::vector<size_t> kept;
  size_t dropped_zero = 0;
  size_t dropped_duplicate = 0;
};

// Validates candidate probe sub-populations against a two-value pair
// (a1, a2) of attribute `attr`. Keeps b_i only if both M(b_i ∧ a1) and
// M(b_i ∧ a2) are positive and M(b_i) differs from all kept predecessors.
ProbeScreen SelectProbes(BoundedNoisyCounts& mechanism,
                         std::span<const Query> candidates,
                         const std::string& attr, const std::string& a1,
                         const std::string& a2);

struct PerturbationEstimate {
  int r_guess = 0;
  int64_t z_min = 0;
  int64_t z_max = 0;
  uint64_t queries = 0;  // 3 per probe
};

// For each probe asks the analyser for (b_i, {a1, a2}) and forms
// z = alpha_1 + alpha_2 - alpha_total; the estimate is
// max(-ceil(z_min/3), ceil(z_max/3)).
PerturbationEstimate FindPerturbation(BoundedNoisyCounts& mechanism,
                                      std::span<const Query> probes,
                                      const std::string& attr,
                                      const std::string& a1, const std::string& a2);

// ---------------------------------------------------------------------------
// Attack 2: removing noise by averaging over two-partitions.

struct ValueScreen {
  std::vector<ValueId> nonzero;  // values whose per-value answer was > 0
  std::vector<ValueId> zero;     // answered 0 (true zero or suppressed)
};

// One Analyse call over `values`; splits them by non-zero output.
ValueScreen ScreenValues(AttributeAnalyser& analyser, std::span<const ValueId> values);

struct RemoveNoiseResult {
  int64_t estimate = 0;   // rounded, clamped
  double raw_mean = 0.0;  // averaged sum before rounding
  bool clamped = false;
  uint64_t partitions = 0;
  uint64_t queries = 0;  // fresh total queries: 2 per partition
};

// Estimates the true count of (b ∧ values) by summing the two total-query
// answers over each of k two-partitions and averaging. Zero-output values
// are folded in by appending them to alternating sides of partitions of the
// non-zero subset, which must have at least 2 values.
RemoveNoiseResult RemoveNoise(AttributeAnalyser& analyser,
                              std::span<const ValueId> values, uint64_t k,
                              const AttackOptions& options = {});

// Same averaging over an explicit plan.
RemoveNoiseResult RemoveNoiseOverPlan(AttributeAnalyser& analyser,
                                      const PartitionPlan& plan,
                                      const AttackOptions& options = {});

// Workaround for a target set with only two non-zero-output values a and b:
// partitions the zero-output middles with a and b pinned to opposite sides.
// Middles whose contributors cannot be confirmed non-empty (the total over
// {a, middle} answered the same as over {a}) are dropped first.
struct AnchoredRemoveResult {
  RemoveNoiseResult result;
  std::vector<ValueId> verified_middles;
};
AnchoredRemoveResult RemoveNoiseAnchored(AttributeAnalyser& analyser, ValueId a,
                                         ValueId b, std::span<const ValueId> middles,
                                         uint64_t k, const AttackOptions& options = {});

struct RecoverResult {
  int64_t estimate = 0;
  bool used_zero_append = false;
  RemoveNoiseResult base;
  RemoveNoiseResult extended;
  uint64_t queries = 0;  // 4k by the two noise-remover runs
};

// True count of (b ∧ target) for a target outside the base set: differences
// the noise-removed estimates of base ∪ {target} and base. The base estimate
// can be passed in when it is shared across many targets.
RecoverResult RecoverValueCount(AttributeAnalyser& analyser,
                                std::span<const ValueId> base_set, ValueId target,
                                uint64_t k, const AttackOptions& options = {},
                                const RemoveNoiseResult* base_estimate = nullptr);

// The in-base variant: base minus (base without target).
RecoverResult RecoverValueCountWithinBase(AttributeAnalyser& analyser,
                                          std::span<const ValueId> base_set,
                                          ValueId target, uint64_t k,
                                          const AttackOptions& options = {},
                                          const RemoveNoiseResult* base_estimate = nullptr);

struct ReconstructionResult {
  std::vector<std::string> labels;    // domain order of the attribute
  std::vector<int64_t> estimates;
  std::vector<bool> clamped;          // raw estimate was negative
  size_t base_size = 0;               // |A'| actually used
  uint64_t partitions_per_target = 0; // k
  uint64_t queries = 0;               // fresh-query tally across all runs
  uint64_t raw_queries = 0;           // total mechanism invocations
};

// Recovers the whole histogram of the analyser's attribute: screens the
// domain for a non-zero-output base subset A', noise-removes its total once,
// then differences every value in and out of A'.
ReconstructionResult ReconstructHistogram(AttributeAnalyser& analyser, uint64_t k,
                                          const AttackOptions& options = {});

}  // namespace bnc

#endif  // BNC_ATTACKS_H_
