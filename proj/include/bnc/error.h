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

#ifndef BNC_ERROR_H_
#define BNC_ERROR_H_

#include <stdexcept>
#include <string>

namespace bnc {

// Error categories, mapped onto CLI exit codes by the tool.
enum class ErrorKind {
  kConfig,      // bad config file / CLI usage
  kData,        // dataset ingestion failure
  kDomain,      // query references unknown attribute or value
  kParam,       // operation called with out-of-range parameters
  kInfeasible,  // optimisation constraints cannot be satisfied
  kInterface,   // caller violated an interface contract
  kInvariant,   // internal invariant violated; a bug
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void ThrowError(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace bnc

#endif  // BNC_ERROR_H_
