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


// Batch front end shared by the `cdsopt` executable and the tests.

#ifndef CDSOPT_CLI_COMMANDS_H_
#define CDSOPT_CLI_COMMANDS_H_

#include <cstdint>
#include <ostream>
#include <string>

#include "cdsopt/error.h"
#include "cdsopt/refrigeration.h"

namespace cdsopt::cli {

enum class Command {
  kOptimize,
  kCertify,
  kSweepLinearization,
  kCompareDerivatives,
  kCheckConcavity,
  kCheckSubmodular,
  kOracle,
  kGenerate,
};

enum class Format { kCsv, kReport };

struct RunConfig {
  Command command = Command::kOptimize;
  std::string scenario_path;
  // "standard", "nonstandard" or "both".
  std::string derivative = "standard";
  SolverChoice solver = SolverChoice::kTu;
  int grid = 200;
  Scheme scheme = Scheme::kEuler;
  std::uint64_t seed = 1;
  std::string output_path = "-";
  Format format = Format::kCsv;
  LinearizationPolicy policy = LinearizationPolicy::kZeros;
  // Linearization points sampled by sweep-linearization and
  // compare-derivatives; all 2^m are used when that is not more.
  int samples = 100;
  // generate only.
  std::string preset = "case1";
  int units = 20;
};

// 0 ok, 2 parse or usage error, 3 infeasible, 4 numeric failure.
int ExitCode(ErrorCode code);

// Runs one command. Output goes to config.output_path, or to `out` when the
// path is "-". Failures are reported on `err` as a single line
//   error: code=<name> exit=<status> [index=<i>] message=<text>
// and the exit status is returned.
int Run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv (argv[0] is the program name) and runs the command.
int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

}  // namespace cdsopt::cli

#endif  // CDSOPT_CLI_COMMANDS_H_
