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

#ifndef BNC_CONFIG_H_
#define BNC_CONFIG_H_

#include <optional>
#include <string>

#include "json.hpp"

#include "bnc/attacks.h"
#include "bnc/csv.h"
#include "bnc/dataset.h"
#include "bnc/mechanism.h"

namespace bnc {

using Json = nlohmann::json;

// Reads and parses a JSON config file; kConfig errors carry the path.
Json LoadConfigFile(const std::string& path);

// dataset section:
//   {"kind": "normal-fixture" | "age-standin" | "synthetic" | "csv" | "counts",
//    ... kind-specific keys, see README}
Dataset BuildDataset(const Json& spec);

// mechanism section:
//   {"r": 2, "s": 4, "seed": 1,
//    "distribution": "uniform"
//      | {"support": [...], "pmf": [...]}
//      | {"max_entropy": {"support": [...], "variance_bound": v}},
//    "verify_contributors": false}
MechanismParams BuildMechanismParams(const Json& spec);

// attack section knobs shared by the noise-removal attacks.
AttackOptions BuildAttackOptions(const Json& spec);

// {"Attr": ["v1", "v2"], ...} -> conjunctive query. Also accepts the
// compact string form "Attr=v1|v2;Other=v3".
Query BuildQuery(const Json& clauses);
Query ParseWhere(const std::string& text);

}  // namespace bnc

#endif  // BNC_CONFIG_H_
