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

#ifndef BNC_EXPERIMENTS_H_
#define BNC_EXPERIMENTS_H_

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "bnc/attacks.h"
#include "bnc/dataset.h"

namespace bnc {

// Runs fn(0..trials-1) across a worker pool. Each trial must be independent;
// results are written into trial-indexed slots so the merge order is fixed.
void ParallelTrials(int trials, int jobs, const std::function<void(int)>& fn);

// ---------------------------------------------------------------------------
// Monte Carlo simulators. Every trial gets its own mechanism seeded from
// (master_seed, trial), so reruns are bit-reproducible.

// Success rate of the perturbation finder with m disjoint probe blocks
// against a two-value attribute, s = r.
double FinderSuccessRate(int r, int m, int trials, uint64_t master_seed, int jobs);

// Success rate of the noise remover recovering the total over m_values
// all-non-zero values with k two-partitions, s = r.
double RemoverSuccessRate(int r, uint64_t k, int m_values, int trials,
                          uint64_t master_seed, int jobs);

// ---------------------------------------------------------------------------
// Scoring.

// True-count buckets in the published row structure: c = 0, suppressed
// (0 < c <= s), mid (s < c <= 100), high (c > 100).
inline constexpr std::array<const char*, 4> kBucketNames = {"zero", "suppressed",
                                                            "mid", "high"};
int BucketOf(int64_t count, int s);

struct ScoredRun {
  int64_t correct_total = 0;
  bool all_correct = false;
  int64_t clamped_instances = 0;
  std::array<int64_t, 4> correct_by_bucket = {0, 0, 0, 0};
};

ScoredRun ScoreReconstruction(std::span<const int64_t> truth,
                              std::span<const int64_t> estimates,
                              const std::vector<bool>& clamped, int s);

// ---------------------------------------------------------------------------
// Single-column histogram reconstruction experiment (the r = 2 normal-count
// fixture), sweeping the partition budget k.

struct Table2Spec {
  std::vector<uint64_t> k_list = {50, 127, 200, 255};
  int trials = 100;
  int r = 2;
  int s = 4;
  uint64_t base_partitions = 1000;
  uint64_t seed = 20200531;
  int jobs = 0;
};

struct Table2Cell {
  uint64_t k = 0;
  double mean_correct = 0.0;
  int all_correct_runs = 0;
  std::array<double, 4> mean_correct_by_bucket = {0, 0, 0, 0};
  int64_t clamped_instances = 0;  // negative raws floored to 0, across runs
  std::vector<ScoredRun> runs;    // per trial, trial-indexed
};

struct Table2Report {
  Table2Spec spec;
  std::array<int64_t, 4> true_by_bucket = {0, 0, 0, 0};
  int64_t domain_size = 0;
  std::vector<Table2Cell> cells;
  double seconds = 0.0;
};

Table2Report RunTable2(const Table2Spec& spec);
void WriteTable2(const Table2Report& report, const std::string& out_dir);

// ---------------------------------------------------------------------------
// Age-column reconstruction with a fixed 11-value base set, sweeping r and k.
// Uses data/adult.data when present, otherwise the shipped stand-in.

struct Table3Spec {
  std::string adult_csv = "data/adult.data";
  bool force_standin = false;
  std::vector<int> r_list = {2, 3, 5};
  std::vector<uint64_t> k_list = {50, 100, 200, 250};
  int trials = 100;
  int s = 4;
  uint64_t base_partitions = 1000;
  int64_t base_lo = 17;  // base set: ages base_lo..base_hi
  int64_t base_hi = 27;
  uint64_t seed = 19940601;
  int jobs = 0;
};

struct Table3Cell {
  int r = 0;
  uint64_t k = 0;
  double mean_correct = 0.0;
  std::array<double, 4> mean_correct_by_bucket = {0, 0, 0, 0};
  std::vector<ScoredRun> runs;
};

struct Table3Report {
  Table3Spec spec;
  bool used_standin = false;
  int64_t domain_size = 0;
  std::array<int64_t, 4> true_by_bucket = {0, 0, 0, 0};
  std::vector<Table3Cell> cells;
  double seconds = 0.0;
};

Table3Report RunTable3(const Table3Spec& spec);
void WriteTable3(const Table3Report& report, const std::string& out_dir);

// ---------------------------------------------------------------------------
// Success of recovering a total as a function of the number of non-zero
// attribute values, all 2^(m-1) - 1 partitions used.

struct AppendixCSpec {
  std::vector<int> r_list = {2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::vector<int> m_list = {2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
  int trials = 10000;
  uint64_t seed = 777001;
  int jobs = 0;
};

struct AppendixCCell {
  int m = 0;
  int r = 0;
  uint64_t k = 0;
  double success = 0.0;
};

struct AppendixCReport {
  AppendixCSpec spec;
  std::vector<AppendixCCell> cells;
  double seconds = 0.0;
};

AppendixCReport RunAppendixC(const AppendixCSpec& spec);
void WriteAppendixC(const AppendixCReport& report, const std::string& out_dir);

// ---------------------------------------------------------------------------
// Probability grids behind the four published curves, emitted as CSV:
//   finder_success.csv      r, m, t, probability        (t = 3m)
//   chebyshev_bound.csv     r, k, t, bound              (m = 12, t = 2k)
//   exact_success.csv       r, k, t, probability        (t = 2k)
//   histogram_union.csv     r, m, probability           (k = 800)
void WriteFigureGrids(const std::string& out_dir);

// ---------------------------------------------------------------------------
// Averaging resistance when the noise scale grows with the query budget:
// noise remover success at budget t with c = ceil(sqrt(t)) (or a fixed c).

struct NoiseScalePoint {
  int64_t t = 0;
  int c = 0;
  uint64_t k = 0;
  double success = 0.0;
};

std::vector<NoiseScalePoint> RunNoiseScaleTrend(std::span<const int64_t> t_list,
                                                bool sqrt_scaled, int fixed_c,
                                                int trials, uint64_t seed, int jobs);

// Writes a ReconstructionResult scored against the dataset: a line-oriented
// estimates file (label <TAB> estimate) and a JSON result file with
// per-value truth and correctness.
void WriteReconstruction(const Dataset& dataset, AttrId attr,
                         const ReconstructionResult& result, int s,
                         const std::string& out_prefix);

}  // namespace bnc

#endif  // BNC_EXPERIMENTS_H_
