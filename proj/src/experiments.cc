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

#include "bnc/experiments.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include "json.hpp"

#include "bnc/analysis.h"
#include "bnc/csv.h"
#include "bnc/mechanism.h"
#include "bnc/synthetic.h"

namespace bnc {
namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int ResolveJobs(int jobs) {
  if (jobs > 0) return jobs;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::ofstream OpenOut(const std::string& path) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path);
  if (!out) ThrowError(ErrorKind::kConfig, "cannot write '" + path + "'");
  return out;
}

std::string FormatProb(double p) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", p);
  return buf;
}

// Mechanism seeded per (master, cell, trial); streams never collide.
uint64_t TrialSeed(uint64_t master, uint64_t cell, int trial) {
  return DeriveSeed(DeriveSeed(master, cell), static_cast<uint64_t>(trial));
}

MechanismParams TrialParams(int r, int s, uint64_t seed) {
  MechanismParams params;
  params.r = r;
  params.s = s;
  params.seed = seed;
  return params;
}

}  // namespace

void ParallelTrials(int trials, int jobs, const std::function<void(int)>& fn) {
  int workers = std::min(ResolveJobs(jobs), trials);
  if (workers <= 1) {
    for (int t = 0; t < trials; ++t) fn(t);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  std::atomic<bool> failed{false};
  std::string error_message;
  std::mutex error_mutex;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        int t = next.fetch_add(1);
        if (t >= trials || failed.load()) return;
        try {
          fn(t);
        } catch (const std::exception& e) {
          std::scoped_lock lock(error_mutex);
          failed = true;
          if (error_message.empty()) error_message = e.what();
          return;
        }
      }
    });
  }
  for (std::thread& th : pool) th.join();
  if (failed) ThrowError(ErrorKind::kInvariant, "trial failed: " + error_message);
}

double FinderSuccessRate(int r, int m, int trials, uint64_t master_seed, int jobs) {
  // Disjoint probe blocks, each with both pair counts above s = r.
  std::vector<std::string> block_labels;
  std::vector<ValueId> block_col;
  std::vector<ValueId> g_col;
  int64_t per_side = r + 2;
  for (int b = 0; b < m; ++b) {
    block_labels.push_back("b" + std::to_string(b));
    for (int64_t i = 0; i < 2 * per_side; ++i) {
      block_col.push_back(static_cast<ValueId>(b));
      g_col.push_back(i < per_side ? 0 : 1);
    }
  }
  Dataset data({{"blk", std::move(block_labels)}, {"g", {"x", "y"}}},
               {std::move(block_col), std::move(g_col)});
  std::vector<Query> probes;
  for (int b = 0; b < m; ++b) {
    probes.push_back(Query().Where("blk", {"b" + std::to_string(b)}));
  }

  std::vector<uint8_t> hit(static_cast<size_t>(trials), 0);
  ParallelTrials(trials, jobs, [&](int t) {
    BoundedNoisyCounts mech(data, TrialParams(r, r, TrialSeed(master_seed, 1, t)));
    PerturbationEstimate est = FindPerturbation(mech, probes, "g", "x", "y");
    hit[static_cast<size_t>(t)] = est.r_guess == r ? 1 : 0;
  });
  int64_t hits = 0;
  for (uint8_t h : hit) hits += h;
  return static_cast<double>(hits) / trials;
}

double RemoverSuccessRate(int r, uint64_t k, int m_values, int trials,
                          uint64_t master_seed, int jobs) {
  std::vector<int64_t> counts;
  int64_t total = 0;
  for (int i = 0; i < m_values; ++i) {
    counts.push_back(2 * r + 100 + 13 * i);
    total += counts.back();
  }
  std::vector<std::string> labels;
  for (int i = 0; i < m_values; ++i) labels.push_back("v" + std::to_string(i));
  Dataset data = Dataset::FromCounts("a", labels, counts);
  std::vector<ValueId> values(static_cast<size_t>(m_values));
  for (int i = 0; i < m_values; ++i) values[static_cast<size_t>(i)] = static_cast<ValueId>(i);

  std::vector<uint8_t> hit(static_cast<size_t>(trials), 0);
  ParallelTrials(trials, jobs, [&](int t) {
    BoundedNoisyCounts mech(data, TrialParams(r, r, TrialSeed(master_seed, 2, t)));
    AttributeAnalyser analyser(mech, Query(), "a");
    RemoveNoiseResult res = RemoveNoise(analyser, values, k);
    hit[static_cast<size_t>(t)] = res.estimate == total ? 1 : 0;
  });
  int64_t hits = 0;
  for (uint8_t h : hit) hits += h;
  return static_cast<double>(hits) / trials;
}

int BucketOf(int64_t count, int s) {
  if (count == 0) return 0;
  if (count <= s) return 1;
  if (count <= 100) return 2;
  return 3;
}

ScoredRun ScoreReconstruction(std::span<const int64_t> truth,
                              std::span<const int64_t> estimates,
                              const std::vector<bool>& clamped, int s) {
  ScoredRun run;
  for (size_t i = 0; i < truth.size(); ++i) {
    if (estimates[i] == truth[i]) {
      ++run.correct_total;
      ++run.correct_by_bucket[static_cast<size_t>(BucketOf(truth[i], s))];
    }
    if (clamped[i]) ++run.clamped_instances;
  }
  run.all_correct = run.correct_total == static_cast<int64_t>(truth.size());
  return run;
}

namespace {

std::vector<int64_t> ColumnCounts(const Dataset& data, AttrId attr) {
  std::vector<int64_t> counts(data.domain_size(attr));
  for (ValueId v = 0; v < counts.size(); ++v) counts[v] = data.value_count(attr, v);
  return counts;
}

std::array<int64_t, 4> BucketTotals(std::span<const int64_t> counts, int s) {
  std::array<int64_t, 4> totals = {0, 0, 0, 0};
  for (int64_t c : counts) ++totals[static_cast<size_t>(BucketOf(c, s))];
  return totals;
}

}  // namespace

Table2Report RunTable2(const Table2Spec& spec) {
  auto start = Clock::now();
  Dataset data = NormalFixtureDataset();
  AttrId attr = data.attr_id("value");
  std::vector<int64_t> truth = ColumnCounts(data, attr);

  Table2Report report;
  report.spec = spec;
  report.domain_size = static_cast<int64_t>(truth.size());
  report.true_by_bucket = BucketTotals(truth, spec.s);

  for (size_t ki = 0; ki < spec.k_list.size(); ++ki) {
    uint64_t k = spec.k_list[ki];
    Table2Cell cell;
    cell.k = k;
    cell.runs.resize(static_cast<size_t>(spec.trials));
    ParallelTrials(spec.trials, spec.jobs, [&](int t) {
      BoundedNoisyCounts mech(
          data, TrialParams(spec.r, spec.s, TrialSeed(spec.seed, 100 + ki, t)));
      AttributeAnalyser analyser(mech, Query(), "value");
      AttackOptions options;
      options.base_partitions = spec.base_partitions;
      ReconstructionResult rec = ReconstructHistogram(analyser, k, options);
      cell.runs[static_cast<size_t>(t)] =
          ScoreReconstruction(truth, rec.estimates, rec.clamped, spec.s);
    });
    for (const ScoredRun& run : cell.runs) {
      cell.mean_correct += static_cast<double>(run.correct_total);
      cell.all_correct_runs += run.all_correct ? 1 : 0;
      cell.clamped_instances += run.clamped_instances;
      for (size_t b = 0; b < 4; ++b) {
        cell.mean_correct_by_bucket[b] += static_cast<double>(run.correct_by_bucket[b]);
      }
    }
    cell.mean_correct /= spec.trials;
    for (double& m : cell.mean_correct_by_bucket) m /= spec.trials;
    report.cells.push_back(std::move(cell));
  }
  report.seconds = Seconds(start);
  return report;
}

namespace {

void WriteBucketedCsv(const std::string& path, const std::string& cell_key,
                      const std::vector<std::string>& cell_values,
                      std::span<const int64_t> true_by_bucket,
                      const std::vector<std::array<double, 4>>& bucket_means,
                      const std::vector<double>& totals,
                      const std::vector<std::string>& extra_names,
                      const std::vector<std::vector<std::string>>& extra_cols) {
  std::ofstream out = OpenOut(path);
  out << cell_key << ",bucket,true_instances,mean_correct\n";
  for (size_t c = 0; c < cell_values.size(); ++c) {
    for (size_t b = 0; b < 4; ++b) {
      out << cell_values[c] << ',' << kBucketNames[b] << ',' << true_by_bucket[b] << ','
          << FormatProb(bucket_means[c][b]) << '\n';
    }
    out << cell_values[c] << ",total,"
        << (true_by_bucket[0] + true_by_bucket[1] + true_by_bucket[2] + true_by_bucket[3])
        << ',' << FormatProb(totals[c]) << '\n';
  }
  for (size_t e = 0; e < extra_names.size(); ++e) {
    out << "# " << extra_names[e];
    for (const std::string& v : extra_cols[e]) out << ',' << v;
    out << '\n';
  }
}

}  // namespace

void WriteTable2(const Table2Report& report, const std::string& out_dir) {
  std::vector<std::string> cell_values;
  std::vector<std::array<double, 4>> bucket_means;
  std::vector<double> totals;
  std::vector<std::string> all_correct;
  std::vector<std::string> clamped;
  for (const Table2Cell& cell : report.cells) {
    cell_values.push_back(std::to_string(cell.k));
    bucket_means.push_back(cell.mean_correct_by_bucket);
    totals.push_back(cell.mean_correct);
    all_correct.push_back(std::to_string(cell.all_correct_runs));
    clamped.push_back(std::to_string(cell.clamped_instances));
  }
  WriteBucketedCsv(out_dir + "/table2_summary.csv", "k", cell_values,
                   report.true_by_bucket, bucket_means, totals,
                   {"all_correct_runs", "clamped_instances"}, {all_correct, clamped});

  nlohmann::json j;
  j["experiment"] = "table2";
  j["r"] = report.spec.r;
  j["s"] = report.spec.s;
  j["trials"] = report.spec.trials;
  j["seed"] = report.spec.seed;
  j["base_partitions"] = report.spec.base_partitions;
  j["domain_size"] = report.domain_size;
  j["seconds"] = report.seconds;
  j["true_by_bucket"] = report.true_by_bucket;
  for (const Table2Cell& cell : report.cells) {
    nlohmann::json jc;
    jc["k"] = cell.k;
    jc["mean_correct"] = cell.mean_correct;
    jc["all_correct_runs"] = cell.all_correct_runs;
    jc["clamped_instances"] = cell.clamped_instances;
    jc["mean_correct_by_bucket"] = cell.mean_correct_by_bucket;
    for (const ScoredRun& run : cell.runs) {
      jc["trials_correct"].push_back(run.correct_total);
    }
    j["cells"].push_back(jc);
  }
  OpenOut(out_dir + "/table2_report.json") << j.dump(2) << '\n';
}

Table3Report RunTable3(const Table3Spec& spec) {
  auto start = Clock::now();
  Table3Report report;
  report.spec = spec;

  Dataset data = [&] {
    if (!spec.force_standin && std::filesystem::exists(spec.adult_csv)) {
      CsvSchema schema;
      schema.has_header = false;
      CsvColumnSpec col;
      col.attribute = "age";
      col.index = 0;
      col.integer = true;
      col.padding = {"10-16", "89", "91-120"};
      schema.columns.push_back(col);
      return LoadCsv(spec.adult_csv, schema);
    }
    report.used_standin = true;
    return AgeStandinDataset();
  }();

  AttrId attr = data.attr_id("age");
  std::vector<int64_t> truth = ColumnCounts(data, attr);
  report.domain_size = static_cast<int64_t>(truth.size());
  report.true_by_bucket = BucketTotals(truth, spec.s);

  std::vector<ValueId> base_ids;
  for (int64_t age = spec.base_lo; age <= spec.base_hi; ++age) {
    base_ids.push_back(data.value_id(attr, std::to_string(age)));
  }
  uint64_t base_available = PartitionPlan::AvailableFor(base_ids.size());
  uint64_t base_k = std::min<uint64_t>(spec.base_partitions, base_available);
  std::vector<ValueId> all_values(truth.size());
  for (ValueId v = 0; v < truth.size(); ++v) all_values[v] = v;

  uint64_t cell_ordinal = 0;
  for (int r : spec.r_list) {
    for (uint64_t k : spec.k_list) {
      ++cell_ordinal;
      Table3Cell cell;
      cell.r = r;
      cell.k = k;
      cell.runs.resize(static_cast<size_t>(spec.trials));
      ParallelTrials(spec.trials, spec.jobs, [&](int t) {
        BoundedNoisyCounts mech(
            data, TrialParams(r, spec.s, TrialSeed(spec.seed, cell_ordinal, t)));
        AttributeAnalyser analyser(mech, Query(), "age");
        AttackOptions options;
        RemoveNoiseResult base = RemoveNoise(analyser, base_ids, base_k, options);
        std::vector<int64_t> estimates(truth.size(), 0);
        std::vector<bool> clamped(truth.size(), false);
        for (ValueId v : all_values) {
          bool in_base =
              std::find(base_ids.begin(), base_ids.end(), v) != base_ids.end();
          RecoverResult rec =
              in_base ? RecoverValueCountWithinBase(analyser, base_ids, v, k, options, &base)
                      : RecoverValueCount(analyser, base_ids, v, k, options, &base);
          estimates[v] = rec.estimate;
          clamped[v] = rec.estimate == 0 &&
                       (in_base ? base.estimate - rec.extended.estimate < 0
                                : rec.extended.estimate - base.estimate < 0);
        }
        cell.runs[static_cast<size_t>(t)] =
            ScoreReconstruction(truth, estimates, clamped, spec.s);
      });
      for (const ScoredRun& run : cell.runs) {
        cell.mean_correct += static_cast<double>(run.correct_total);
        for (size_t b = 0; b < 4; ++b) {
          cell.mean_correct_by_bucket[b] += static_cast<double>(run.correct_by_bucket[b]);
        }
      }
      cell.mean_correct /= spec.trials;
      for (double& m : cell.mean_correct_by_bucket) m /= spec.trials;
      report.cells.push_back(std::move(cell));
    }
  }
  report.seconds = Seconds(start);
  return report;
}

void WriteTable3(const Table3Report& report, const std::string& out_dir) {
  std::ofstream out = OpenOut(out_dir + "/table3_summary.csv");
  out << "r,k,mean_correct,percent\n";
  for (const Table3Cell& cell : report.cells) {
    out << cell.r << ',' << cell.k << ',' << FormatProb(cell.mean_correct) << ','
        << FormatProb(100.0 * cell.mean_correct / static_cast<double>(report.domain_size))
        << '\n';
  }
  out.close();

  nlohmann::json j;
  j["experiment"] = "table3";
  j["dataset"] = report.used_standin ? "age-standin" : report.spec.adult_csv;
  j["s"] = report.spec.s;
  j["trials"] = report.spec.trials;
  j["seed"] = report.spec.seed;
  j["base_partitions"] = report.spec.base_partitions;
  j["domain_size"] = report.domain_size;
  j["true_by_bucket"] = report.true_by_bucket;
  j["seconds"] = report.seconds;
  for (const Table3Cell& cell : report.cells) {
    nlohmann::json jc;
    jc["r"] = cell.r;
    jc["k"] = cell.k;
    jc["mean_correct"] = cell.mean_correct;
    jc["mean_correct_by_bucket"] = cell.mean_correct_by_bucket;
    for (const ScoredRun& run : cell.runs) jc["trials_correct"].push_back(run.correct_total);
    j["cells"].push_back(jc);
  }
  OpenOut(out_dir + "/table3_report.json") << j.dump(2) << '\n';
}

AppendixCReport RunAppendixC(const AppendixCSpec& spec) {
  auto start = Clock::now();
  AppendixCReport report;
  report.spec = spec;
  uint64_t cell_ordinal = 0;
  for (int m : spec.m_list) {
    for (int r : spec.r_list) {
      ++cell_ordinal;
      uint64_t k = PartitionPlan::AvailableFor(static_cast<size_t>(m));
      AppendixCCell cell;
      cell.m = m;
      cell.r = r;
      cell.k = k;
      cell.success = RemoverSuccessRate(r, k, m, spec.trials,
                                        DeriveSeed(spec.seed, cell_ordinal), spec.jobs);
      report.cells.push_back(cell);
    }
  }
  report.seconds = Seconds(start);
  return report;
}

void WriteAppendixC(const AppendixCReport& report, const std::string& out_dir) {
  std::ofstream out = OpenOut(out_dir + "/appendix_c_grid.csv");
  out << "m,r,k,success\n";
  for (const AppendixCCell& cell : report.cells) {
    out << cell.m << ',' << cell.r << ',' << cell.k << ',' << FormatProb(cell.success)
        << '\n';
  }
}

void WriteFigureGrids(const std::string& out_dir) {
  {
    std::ofstream out = OpenOut(out_dir + "/finder_success.csv");
    out << "r,m,t,probability\n";
    for (int r = 1; r <= 10; ++r) {
      for (int64_t m = 1; m <= 400; ++m) {
        out << r << ',' << m << ',' << 3 * m << ','
            << FormatProb(PerturbationFinderSuccess(r, m)) << '\n';
      }
    }
  }
  {
    std::ofstream out = OpenOut(out_dir + "/chebyshev_bound.csv");
    out << "r,k,t,bound\n";
    for (int r = 1; r <= 10; ++r) {
      for (int64_t k = 1; k <= 2047; ++k) {
        out << r << ',' << k << ',' << 2 * k << ',' << FormatProb(ChebyshevLowerBound(r, k))
            << '\n';
      }
    }
  }
  {
    std::ofstream out = OpenOut(out_dir + "/exact_success.csv");
    out << "r,k,t,probability\n";
    for (int r = 1; r <= 10; ++r) {
      std::vector<std::string> lines;
      ForEachExactSuccess(r, 1000, [&](int64_t k, double p) {
        lines.push_back(std::to_string(r) + ',' + std::to_string(k) + ',' +
                        std::to_string(2 * k) + ',' + FormatProb(p));
      });
      for (const std::string& line : lines) out << line << '\n';
    }
  }
  {
    std::ofstream out = OpenOut(out_dir + "/histogram_union.csv");
    out << "r,m,probability\n";
    for (int r = 1; r <= 10; ++r) {
      double p_nr = NoiseRemoverExactSuccess(r, 800);
      for (int64_t m = 12; m <= 150; ++m) {
        out << r << ',' << m << ',' << FormatProb(HistogramUnionBound(p_nr, m)) << '\n';
      }
    }
  }
}

std::vector<NoiseScalePoint> RunNoiseScaleTrend(std::span<const int64_t> t_list,
                                                bool sqrt_scaled, int fixed_c,
                                                int trials, uint64_t seed, int jobs) {
  std::vector<NoiseScalePoint> points;
  uint64_t ordinal = 0;
  for (int64_t t : t_list) {
    ++ordinal;
    NoiseScalePoint point;
    point.t = t;
    point.c = sqrt_scaled ? static_cast<int>(MinNoiseScale(t).c) : fixed_c;
    point.k = static_cast<uint64_t>(t / 2);
    if (point.k == 0) ThrowError(ErrorKind::kParam, "query budget too small");
    point.success = RemoverSuccessRate(point.c, point.k, /*m_values=*/14, trials,
                                       DeriveSeed(seed, ordinal), jobs);
    points.push_back(point);
  }
  return points;
}

void WriteReconstruction(const Dataset& dataset, AttrId attr,
                         const ReconstructionResult& result, int s,
                         const std::string& out_prefix) {
  {
    std::ofstream out = OpenOut(out_prefix + ".estimates.tsv");
    for (size_t i = 0; i < result.labels.size(); ++i) {
      out << result.labels[i] << '\t' << result.estimates[i] << '\n';
    }
  }
  nlohmann::json j;
  j["attribute"] = dataset.attr_name(attr);
  j["k"] = result.partitions_per_target;
  j["base_size"] = result.base_size;
  j["queries"] = result.queries;
  j["raw_queries"] = result.raw_queries;
  int64_t correct = 0;
  for (size_t i = 0; i < result.labels.size(); ++i) {
    int64_t truth = dataset.value_count(attr, static_cast<ValueId>(i));
    nlohmann::json row;
    row["value"] = result.labels[i];
    row["true_count"] = truth;
    row["estimate"] = result.estimates[i];
    row["correct"] = result.estimates[i] == truth;
    row["clamped"] = static_cast<bool>(result.clamped[i]);
    row["bucket"] = kBucketNames[static_cast<size_t>(BucketOf(truth, s))];
    correct += result.estimates[i] == truth ? 1 : 0;
    j["values"].push_back(row);
  }
  j["correct_total"] = correct;
  OpenOut(out_prefix + ".result.json") << j.dump(2) << '\n';
}

}  // namespace bnc
