// Copyright 2026 The SSC Authors
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

#ifndef SSC_ERRORS_H_
#define SSC_ERRORS_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace ssc {

enum class ErrorKind {
  kInvalidParameter,
  kStructural,
  kValidation,
  kSingularModel,
  kInfeasibleDistortion,
  kNumeric,
  kResource,
};

std::string_view ErrorKindName(ErrorKind kind);

// All library failures are reported through this exception type.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void Fail(ErrorKind kind, const std::string& message);

inline void Require(bool condition, ErrorKind kind,
                    const std::string& message) {
  if (!condition) Fail(kind, message);
}

}  // namespace ssc

#endif  // SSC_ERRORS_H_
