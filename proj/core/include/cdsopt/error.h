// Copyright 2026 The cdsopt Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CDSOPT_ERROR_H_
#define CDSOPT_ERROR_H_

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cdsopt {

enum class ErrorCode {
  kDimension,
  kInvalidArgument,
  kIntegrationDiverged,
  kAdjointDiverged,
  kNotRelaxable,
  kConstraint,
  kInfeasible,
  kTuViolation,
  kEnumerationRefused,
  kInvalidParams,
  kParse,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported through this exception. `index` carries
// the offending knot (integration errors) or step (receding horizon) when
// one exists.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<long> index = std::nullopt)
      : std::runtime_error(message), code_(code), index_(index) {}

  ErrorCode code() const { return code_; }
  std::optional<long> index() const { return index_; }

 private:
  ErrorCode code_;
  std::optional<long> index_;
};

}  // namespace cdsopt

#endif  // CDSOPT_ERROR_H_
