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


// Scenario files: YAML with a versioned schema tag.
//
//   schema: cdsopt-scenario/1
//   step_minutes: 15          # optional, >= 10
//   num_steps: 32             # optional
//   fleet:
//     m: 20
//     a: {rows: 20, cols: 20, data: [...]}   # row-major
//     b: [...]                # or a scalar applied to every unit
//     theta_ambient, theta_lo, theta_hi, delta, c, x0: likewise
//   case:
//     type: target_band       # y_lo, y_hi: length num_steps or scalar
//     type: tu                # q: matrix, r: list, z_bar: optional list
//   transient:                # optional
//     xi: [...]
//     members: [...]          # 0-based unit indices
//
// Unknown keys are rejected. Every error names the field path and line.

#ifndef CDSOPT_CLI_SCENARIO_IO_H_
#define CDSOPT_CLI_SCENARIO_IO_H_

#include <ostream>
#include <string>

#include "cdsopt/refrigeration.h"

namespace cdsopt::cli {

inline constexpr const char* kScenarioSchema = "cdsopt-scenario/1";

// Throws Error(kParse) on any syntax, type or invariant problem.
Scenario ParseScenario(const std::string& path);
Scenario ParseScenarioText(const std::string& text);

// Writes doubles with 17 significant digits so parsing reproduces them.
void WriteScenario(const Scenario& scenario, std::ostream& out);

}  // namespace cdsopt::cli

#endif  // CDSOPT_CLI_SCENARIO_IO_H_
