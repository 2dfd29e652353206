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

#ifndef BNC_SYNTHETIC_H_
#define BNC_SYNTHETIC_H_

#include <cstdint>
#include <string>
#include <vector>

#include "bnc/dataset.h"

namespace bnc {

struct SyntheticParams {
  uint64_t seed = 1;
  int64_t n = 600000;       // rows
  double mean = 25.0;
  double stddev = 5.0;
  int64_t bin_lo = 1;       // populated bins, inclusive
  int64_t bin_hi = 51;
  int64_t domain_size = 107; // values bin_hi+1 .. domain_size exist with count 0
  std::string attribute = "value";
};

// Draws n normal samples, bins each to its nearest integer
// (half-away-from-zero, clamped to [bin_lo, bin_hi]), and labels the domain
// 1..domain_size. Deterministic for a given seed.
Dataset GenerateSynthetic(const SyntheticParams& params);

// The frozen 107-value count table used by the single-column reconstruction
// experiment (counts 1..51 populated, 52..107 zero; 600,000 rows total).
const std::vector<int64_t>& NormalFixtureCounts();

// Dataset replaying NormalFixtureCounts exactly.
Dataset NormalFixtureDataset(const std::string& attribute = "value");

// A stand-in for the UCI Adult age column with the same shape: 111 age
// values 10..120 minus the never-observed gaps, count buckets matching the
// real file (38 zeros, 4 suppressed-range, 16 in (4,100], 53 in (100,898]),
// and ages 17..27 all counted >= 395 so they can serve as the base set.
Dataset AgeStandinDataset(const std::string& attribute = "age");
const std::vector<int64_t>& AgeStandinCounts();  // indexed by age - 10
std::vector<std::string> AgeStandinLabels();

}  // namespace bnc

#endif  // BNC_SYNTHETIC_H_
