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

#ifndef BNC_CSV_H_
#define BNC_CSV_H_

#include <optional>
#include <string>
#include <vector>

#include "bnc/dataset.h"

namespace bnc {

// Which columns of a comma-separated file to ingest, and how.
//
// Integer columns get their domain sorted numerically and may declare
// padding: extra domain values that exist with count zero even though no row
// carries them (needed when the analysis must cover values absent from the
// data). Padding entries are single integers ("89") or inclusive ranges
// ("91-120").
struct CsvColumnSpec {
  std::string attribute;            // attribute name in the dataset
  int index = -1;                   // column position; -1 = look up by header
  std::string header;               // header name when index < 0
  bool integer = false;             // parse cells as integers
  std::vector<std::string> padding; // extra zero-count domain values
};

struct CsvSchema {
  bool has_header = false;
  std::vector<CsvColumnSpec> columns;
};

// Reads `path` into a Dataset. Domains are the distinct observed values
// union any declared padding. Raises kData errors (with the 1-based row
// number) for missing files, ragged rows, and unparsable cells.
Dataset LoadCsv(const std::string& path, const CsvSchema& schema);

// Expands a padding entry list into concrete labels.
std::vector<int64_t> ExpandIntegerPadding(const std::vector<std::string>& padding);

}  // namespace bnc

#endif  // BNC_CSV_H_
