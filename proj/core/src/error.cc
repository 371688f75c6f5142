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

#include "cdsopt/error.h"

namespace cdsopt {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimension: return "dimension";
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kIntegrationDiverged: return "integration_diverged";
    case ErrorCode::kAdjointDiverged: return "adjoint_diverged";
    case ErrorCode::kNotRelaxable: return "not_relaxable";
    case ErrorCode::kConstraint: return "constraint";
    case ErrorCode::kInfeasible: return "infeasible";
    case ErrorCode::kTuViolation: return "tu_violation";
    case ErrorCode::kEnumerationRefused: return "enumeration_refused";
    case ErrorCode::kInvalidParams: return "invalid_params";
    case ErrorCode::kParse: return "parse";
  }
  return "unknown";
}

}  // namespace cdsopt
