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

#include "bnc/csv.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace bnc {
namespace {

std::string Trim(const std::string& s) {
  size_t begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  size_t end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(Trim(cell));
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

int64_t ParseInt(const std::string& s, size_t row_number) {
  int64_t out = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    ThrowError(ErrorKind::kData, "row " + std::to_string(row_number) +
                                     ": cannot parse '" + s + "' as an integer");
  }
  return out;
}

}  // namespace

std::vector<int64_t> ExpandIntegerPadding(const std::vector<std::string>& padding) {
  std::vector<int64_t> out;
  for (const std::string& entry : padding) {
    size_t dash = entry.find('-', entry.empty() || entry[0] == '-' ? 1 : 0);
    if (dash == std::string::npos) {
      out.push_back(ParseInt(entry, 0));
      continue;
    }
    int64_t lo = ParseInt(entry.substr(0, dash), 0);
    int64_t hi = ParseInt(entry.substr(dash + 1), 0);
    if (hi < lo) ThrowError(ErrorKind::kParam, "padding range '" + entry + "' is inverted");
    for (int64_t v = lo; v <= hi; ++v) out.push_back(v);
  }
  return out;
}

Dataset LoadCsv(const std::string& path, const CsvSchema& schema) {
  if (schema.columns.empty()) {
    ThrowError(ErrorKind::kConfig, "csv schema declares no columns");
  }
  std::ifstream in(path);
  if (!in) ThrowError(ErrorKind::kData, "cannot open '" + path + "'");

  std::string line;
  size_t row_number = 0;
  std::vector<CsvColumnSpec> columns = schema.columns;

  if (schema.has_header) {
    if (!std::getline(in, line)) ThrowError(ErrorKind::kData, "'" + path + "' is empty");
    ++row_number;
    std::vector<std::string> header = SplitCsvLine(line);
    for (CsvColumnSpec& col : columns) {
      if (col.index >= 0) continue;
      auto it = std::find(header.begin(), header.end(),
                          col.header.empty() ? col.attribute : col.header);
      if (it == header.end()) {
        ThrowError(ErrorKind::kData, "'" + path + "' has no header column '" +
                                         (col.header.empty() ? col.attribute : col.header) + "'");
      }
      col.index = static_cast<int>(it - header.begin());
    }
  } else {
    for (const CsvColumnSpec& col : columns) {
      if (col.index < 0) {
        ThrowError(ErrorKind::kConfig, "column '" + col.attribute +
                                           "' needs an index when the file has no header");
      }
    }
  }

  // Raw cells per ingested column; value interning happens after the domain
  // is known so integer domains can be sorted numerically.
  std::vector<std::vector<std::string>> raw(columns.size());
  size_t expected_width = 0;
  while (std::getline(in, line)) {
    ++row_number;
    if (Trim(line).empty()) continue;
    std::vector<std::string> cells = SplitCsvLine(line);
    if (expected_width == 0) expected_width = cells.size();
    if (cells.size() != expected_width) {
      ThrowError(ErrorKind::kData, "row " + std::to_string(row_number) + ": expected " +
                                       std::to_string(expected_width) + " cells, got " +
                                       std::to_string(cells.size()));
    }
    for (size_t c = 0; c < columns.size(); ++c) {
      if (columns[c].index >= static_cast<int>(cells.size())) {
        ThrowError(ErrorKind::kData, "row " + std::to_string(row_number) +
                                         ": no column " + std::to_string(columns[c].index));
      }
      raw[c].push_back(cells[static_cast<size_t>(columns[c].index)]);
    }
  }
  if (raw[0].empty()) ThrowError(ErrorKind::kData, "'" + path + "' has no data rows");

  std::vector<Dataset::AttributeSpec> specs;
  std::vector<std::vector<ValueId>> value_columns;
  for (size_t c = 0; c < columns.size(); ++c) {
    const CsvColumnSpec& col = columns[c];
    Dataset::AttributeSpec spec;
    spec.name = col.attribute;
    std::map<std::string, ValueId> ids;
    if (col.integer) {
      // Numeric domain: observed values union padding, sorted numerically.
      std::set<int64_t> domain;
      std::vector<int64_t> parsed;
      parsed.reserve(raw[c].size());
      size_t data_row = schema.has_header ? 2 : 1;
      for (const std::string& cell : raw[c]) {
        double as_double = 0.0;
        int64_t v = 0;
        auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
        if (ec != std::errc() || ptr != cell.data() + cell.size()) {
          // Fall back to float parse with round-half-away-from-zero binning.
          try {
            size_t consumed = 0;
            as_double = std::stod(cell, &consumed);
            if (consumed != cell.size()) throw std::invalid_argument(cell);
          } catch (const std::exception&) {
            ThrowError(ErrorKind::kData, "row " + std::to_string(data_row) +
                                             ": cannot parse '" + cell + "' as a number");
          }
          v = static_cast<int64_t>(as_double < 0 ? as_double - 0.5 : as_double + 0.5);
        }
        parsed.push_back(v);
        domain.insert(v);
        ++data_row;
      }
      for (int64_t pad : ExpandIntegerPadding(col.padding)) domain.insert(pad);
      for (int64_t v : domain) {
        ids[std::to_string(v)] = static_cast<ValueId>(spec.labels.size());
        spec.labels.push_back(std::to_string(v));
      }
      std::vector<ValueId> column;
      column.reserve(parsed.size());
      for (int64_t v : parsed) column.push_back(ids[std::to_string(v)]);
      value_columns.push_back(std::move(column));
    } else {
      std::set<std::string> domain(raw[c].begin(), raw[c].end());
      for (const std::string& pad : col.padding) domain.insert(pad);
      for (const std::string& v : domain) {
        ids[v] = static_cast<ValueId>(spec.labels.size());
        spec.labels.push_back(v);
      }
      std::vector<ValueId> column;
      column.reserve(raw[c].size());
      for (const std::string& v : raw[c]) column.push_back(ids[v]);
      value_columns.push_back(std::move(column));
    }
    specs.push_back(std::move(spec));
  }
  return Dataset(std::move(specs), std::move(value_columns));
}

}  // namespace bnc
