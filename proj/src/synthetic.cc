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

#include "bnc/synthetic.h"

#include <cmath>

#include "bnc/rng.h"

namespace bnc {
namespace {

int64_t RoundHalfAwayFromZero(double x) {
  return static_cast<int64_t>(x >= 0 ? std::floor(x + 0.5) : std::ceil(x - 0.5));
}

std::vector<std::string> NumericLabels(int64_t lo, int64_t hi) {
  std::vector<std::string> labels;
  labels.reserve(static_cast<size_t>(hi - lo + 1));
  for (int64_t v = lo; v <= hi; ++v) labels.push_back(std::to_string(v));
  return labels;
}

}  // namespace

Dataset GenerateSynthetic(const SyntheticParams& params) {
  if (params.n < 1) ThrowError(ErrorKind::kParam, "synthetic row count must be >= 1");
  if (params.bin_hi < params.bin_lo) {
    ThrowError(ErrorKind::kParam, "bin range is inverted");
  }
  if (params.domain_size < params.bin_hi) {
    ThrowError(ErrorKind::kParam,
               "domain_size " + std::to_string(params.domain_size) +
                   " is smaller than the largest bin label " +
                   std::to_string(params.bin_hi));
  }
  Rng rng(params.seed);
  std::vector<ValueId> column;
  column.reserve(static_cast<size_t>(params.n));
  for (int64_t i = 0; i < params.n; ++i) {
    double sample = params.mean + params.stddev * rng.NextGaussian();
    int64_t bin = RoundHalfAwayFromZero(sample);
    if (bin < params.bin_lo) bin = params.bin_lo;
    if (bin > params.bin_hi) bin = params.bin_hi;
    column.push_back(static_cast<ValueId>(bin - 1));  // labels start at "1"
  }
  return Dataset({Dataset::AttributeSpec{params.attribute,
                                         NumericLabels(1, params.domain_size)}},
                 {std::move(column)});
}

const std::vector<int64_t>& NormalFixtureCounts() {
  static const std::vector<int64_t> counts = [] {
    std::vector<int64_t> c = {
        1,     3,     6,     12,    33,    53,    114,   199,   372,   677,
        1075,  1837,  2884,  4388,  6496,  9136,  12694, 16893, 21513, 26566,
        31854, 36741, 40268, 43426, 44865, 44812, 43054, 40259, 35698, 31534,
        26103, 20953, 16539, 12430, 8977,  6297,  4283,  2715,  1775,  1085,
        614,   377,   196,   93,    53,    24,    14,    3,     4,     1,
        1};
    c.resize(107, 0);  // values 52..107 exist with count 0
    return c;
  }();
  return counts;
}

Dataset NormalFixtureDataset(const std::string& attribute) {
  const auto& counts = NormalFixtureCounts();
  return Dataset::FromCounts(attribute, NumericLabels(1, static_cast<int64_t>(counts.size())),
                             counts);
}

const std::vector<int64_t>& AgeStandinCounts() {
  static const std::vector<int64_t> counts = [] {
    std::vector<int64_t> c(111, 0);  // index = age - 10
    // Working-age bulk, 53 ages in (100, 898], peaked in the mid thirties.
    for (int64_t age = 17; age <= 69; ++age) {
      double z = (static_cast<double>(age) - 36.0) / 14.0;
      c[age - 10] = 101 + RoundHalfAwayFromZero(797.0 * std::exp(-0.5 * z * z));
    }
    // Tail of 16 ages in (4, 100].
    for (int64_t age = 70; age <= 85; ++age) {
      c[age - 10] = 100 - 6 * (age - 70);
    }
    // Four low counts inside the suppression range, with a gap at 89.
    c[86 - 10] = 4;
    c[87 - 10] = 3;
    c[88 - 10] = 2;
    c[90 - 10] = 1;
    return c;
  }();
  return counts;
}

std::vector<std::string> AgeStandinLabels() { return NumericLabels(10, 120); }

Dataset AgeStandinDataset(const std::string& attribute) {
  return Dataset::FromCounts(attribute, AgeStandinLabels(), AgeStandinCounts());
}

}  // namespace bnc
