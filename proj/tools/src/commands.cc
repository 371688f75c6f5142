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


#include "cdsopt_cli/commands.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "cdsopt/bounds.h"
#include "cdsopt/combisolve.h"
#include "cdsopt/derivative.h"
#include "cdsopt/parallel.h"
#include "cdsopt/surrogate.h"
#include "cdsopt_cli/scenario_io.h"

namespace cdsopt::cli {

namespace {

std::string Fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::vector<DerivativeKind> Kinds(const RunConfig& config) {
  if (config.derivative == "both") {
    return {DerivativeKind::kStandard, DerivativeKind::kNonstandard};
  }
  return {ParseDerivativeKind(config.derivative)};
}

DerivativeKind SingleKind(const RunConfig& config) {
  if (config.derivative == "both") {
    throw Error(ErrorCode::kInvalidArgument,
                "this command needs --derivative standard or nonstandard");
  }
  return ParseDerivativeKind(config.derivative);
}

Scenario Load(const RunConfig& config) {
  if (config.scenario_path.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "--scenario is required");
  }
  return ParseScenario(config.scenario_path);
}

HorizonOptions Options(const RunConfig& config, DerivativeKind kind) {
  HorizonOptions o;
  o.kind = kind;
  o.policy = config.policy;
  o.solver = config.solver;
  o.grid_points = config.grid;
  o.scheme = config.scheme;
  o.seed = config.seed;
  return o;
}

bool LinearSolver(SolverChoice s) {
  return s == SolverChoice::kL0 || s == SolverChoice::kTu ||
         s == SolverChoice::kKnapsack;
}

// Ratio (J(a) - J(0)) / (J(opt) - J(0)); 1 when the oracle gains nothing.
double GainRatio(double gain, double oracle_gain) {
  if (std::abs(oracle_gain) <= 1e-12 * (1.0 + std::abs(gain))) return 1.0;
  return gain / oracle_gain;
}

// First-step problem shared by the single-step commands.
struct FirstStep {
  Scenario scenario;
  SystemSpec spec;
  TimeGrid grid;
  ConstraintSet constraints;
};

FirstStep LoadFirstStep(const RunConfig& config, SolverChoice solver) {
  Scenario s = Load(config);
  s.Validate();
  SystemSpec spec = StepSystem(s, s.params.x0);
  TimeGrid grid(s.StepHours(), config.grid);
  ConstraintSet constraints = StepConstraints(s, 0, solver);
  return {std::move(s), std::move(spec), grid, std::move(constraints)};
}

std::vector<BinaryVector> SamplePoints(int m, int samples,
                                       std::uint64_t seed) {
  std::vector<BinaryVector> points;
  if (m < 31 && (std::int64_t{1} << m) <= samples) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
      points.push_back(BinaryVector::FromMask(mask, m));
    }
    return points;
  }
  std::mt19937_64 rng(seed);
  for (int s = 0; s < samples; ++s) {
    BinaryVector v(m);
    for (int i = 0; i < m; ++i) v.Set(i, (rng() >> 63) != 0);
    points.push_back(std::move(v));
  }
  return points;
}

void Header(std::ostream& out, const char* title, const RunConfig& config) {
  out << "cdsopt " << title << "\n";
  out << "scenario: " << config.scenario_path << "\n";
  out << "derivative: " << config.derivative
      << "  solver: " << SolverChoiceName(config.solver)
      << "  grid: " << config.grid << "  scheme: " << SchemeName(config.scheme)
      << "  policy: " << LinearizationPolicyName(config.policy)
      << "  seed: " << config.seed << "\n";
}

void Optimize(const RunConfig& config, std::ostream& out) {
  const Scenario s = Load(config);
  const std::vector<StepResult> results =
      RunRecedingHorizon(s, Options(config, SingleKind(config)));
  if (config.format == Format::kCsv) {
    out << "step,unit,alpha,temperature_end,power_kw,payoff,rho_post\n";
    for (const StepResult& r : results) {
      for (int i = 0; i < s.params.m; ++i) {
        out << r.step << "," << i + 1 << "," << (r.alpha[i] ? 1 : 0) << ","
            << Fmt(r.temperatures_end[i]) << "," << Fmt(r.power_kw) << ","
            << Fmt(r.payoff) << "," << Fmt(r.rho_post) << "\n";
      }
    }
    return;
  }
  Header(out, "optimize", config);
  out << "step  power_kw  payoff  rho_post  certified_optimal  alpha\n";
  double min_rho = std::numeric_limits<double>::infinity();
  double sum_rho = 0.0;
  for (const StepResult& r : results) {
    out << r.step << "  " << Fmt(r.power_kw) << "  " << Fmt(r.payoff) << "  "
        << Fmt(r.rho_post) << "  " << (r.optimal ? "yes" : "no") << "  "
        << r.alpha.ToString() << "\n";
    min_rho = std::min(min_rho, r.rho_post);
    sum_rho += r.rho_post;
  }
  out << "summary: steps=" << results.size() << " min_rho_post="
      << Fmt(min_rho) << " mean_rho_post="
      << Fmt(sum_rho / std::max<std::size_t>(1, results.size())) << "\n";
}

void Certify(const RunConfig& config, std::ostream& out) {
  const Scenario s = Load(config);
  const bool csv = config.format == Format::kCsv;
  if (csv) {
    out << "step,derivative,alpha_bar,alpha_star,alpha_post,base_payoff,"
           "payoff_star,payoff_post,denominator,optimal,rho,rho_post\n";
  } else {
    Header(out, "certify", config);
  }
  for (DerivativeKind kind : Kinds(config)) {
    HorizonOptions o = Options(config, kind);
    std::vector<CertifiedSolution> certs;
    std::vector<BinaryVector> bars;
    o.observer = [&](const StepContext& ctx) {
      certs.push_back(*ctx.certificate);
      bars.push_back(ctx.gradient->base_point);
    };
    RunRecedingHorizon(s, o);
    for (std::size_t k = 0; k < certs.size(); ++k) {
      const CertifiedSolution& c = certs[k];
      if (csv) {
        out << k + 1 << "," << DerivativeKindName(kind) << ","
            << bars[k].ToString() << "," << c.alpha_star.ToString() << ","
            << c.alpha_post.ToString() << "," << Fmt(c.base_payoff) << ","
            << Fmt(c.payoff) << "," << Fmt(c.post_payoff) << ","
            << Fmt(c.denominator) << "," << (c.optimal ? 1 : 0) << ","
            << Fmt(c.rho) << "," << Fmt(c.rho_post) << "\n";
      } else {
        out << "step " << k + 1 << " [" << DerivativeKindName(kind) << "] ";
        if (c.optimal) {
          out << "linearization point certified optimal";
        } else {
          out << "rho=" << Fmt(c.rho) << " rho_post=" << Fmt(c.rho_post)
              << " (J(alpha_post) - J(alpha_bar) >= rho_post * "
                 "(J(opt) - J(alpha_bar)))";
        }
        out << " payoff_post=" << Fmt(c.post_payoff) << "\n";
      }
    }
  }
}

struct SweepRow {
  BinaryVector bar;
  DerivativeKind kind;
  bool feasible = false;
  CertifiedSolution cert;
};

void SweepLinearization(const RunConfig& config, std::ostream& out) {
  if (!LinearSolver(config.solver)) {
    throw Error(ErrorCode::kInvalidArgument,
                "sweep-linearization needs --solver l0, tu or knapsack");
  }
  const FirstStep fs = LoadFirstStep(config, config.solver);
  const int m = fs.scenario.params.m;
  const PayoffOracle oracle =
      MakePayoffOracle(fs.spec, fs.grid, config.scheme, config.seed);
  const double j0 = oracle.payoff(BinaryVector(m));
  double oracle_gain = std::numeric_limits<double>::quiet_NaN();
  if (m <= kMaxEnumerationDim) {
    oracle_gain =
        SolveBruteForce(oracle.payoff, fs.constraints, m).value - j0;
  }
  const std::vector<BinaryVector> points =
      SamplePoints(m, config.samples, config.seed);
  const std::vector<DerivativeKind> kinds = Kinds(config);
  std::vector<SweepRow> rows(points.size() * kinds.size());
  const double ratio = SolverRatio(fs.constraints);
  ParallelChunks(0, static_cast<std::int64_t>(points.size()),
                 [&](std::int64_t lo, std::int64_t hi, int) {
    for (std::int64_t p = lo; p < hi; ++p) {
      const Linearization lin =
          Linearize(fs.spec, points[p], fs.grid, config.scheme);
      const bool feasible = IsFeasible(fs.constraints, points[p]);
      for (std::size_t q = 0; q < kinds.size(); ++q) {
        const Gradient grad = ComputeDerivative(kinds[q], fs.spec, lin);
        const BinaryVector star = SolveLinearized(grad.entries, fs.constraints);
        SweepRow& row = rows[p * kinds.size() + q];
        row.bar = points[p];
        row.kind = kinds[q];
        row.feasible = feasible;
        row.cert = CertifyWithPayoff(grad, star, oracle.payoff(star), ratio,
                                     feasible);
      }
    }
  });
  if (config.format == Format::kCsv) {
    out << "index,derivative,alpha_bar,base_feasible,alpha_post,payoff,gain,"
           "oracle_gain,ratio,rho_post\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const SweepRow& r = rows[i];
      const double gain = r.cert.post_payoff - j0;
      out << i / kinds.size() << "," << DerivativeKindName(r.kind) << ","
          << r.bar.ToString() << "," << (r.feasible ? 1 : 0) << ","
          << r.cert.alpha_post.ToString() << "," << Fmt(r.cert.post_payoff)
          << "," << Fmt(gain) << "," << Fmt(oracle_gain) << ","
          << Fmt(std::isnan(oracle_gain) ? oracle_gain
                                          : GainRatio(gain, oracle_gain))
          << "," << Fmt(r.cert.rho_post) << "\n";
    }
    return;
  }
  Header(out, "sweep-linearization", config);
  out << "points: " << points.size() << "  oracle_gain: " << Fmt(oracle_gain)
      << "  payoff_model: " << (oracle.quadratic ? "quadratic" : "direct")
      << "\n";
  for (DerivativeKind kind : kinds) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    double sum = 0.0;
    int n = 0;
    for (const SweepRow& r : rows) {
      if (r.kind != kind) continue;
      const double v = GainRatio(r.cert.post_payoff - j0, oracle_gain);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      sum += v;
      ++n;
    }
    out << DerivativeKindName(kind) << ": ratio mean=" << Fmt(sum / n)
        << " min=" << Fmt(lo) << " max=" << Fmt(hi) << "\n";
  }
}

void CompareDerivatives(const RunConfig& config, std::ostream& out) {
  if (!LinearSolver(config.solver)) {
    throw Error(ErrorCode::kInvalidArgument,
                "compare-derivatives needs --solver l0, tu or knapsack");
  }
  const FirstStep fs = LoadFirstStep(config, config.solver);
  const int m = fs.scenario.params.m;
  const PayoffOracle oracle =
      MakePayoffOracle(fs.spec, fs.grid, config.scheme, config.seed);
  const double j0 = oracle.payoff(BinaryVector(m));
  const std::vector<BinaryVector> points =
      SamplePoints(m, config.samples, config.seed);
  const double ratio = SolverRatio(fs.constraints);
  struct Row {
    double diff = 0.0;
    double gain_standard = 0.0;
    double gain_nonstandard = 0.0;
  };
  std::vector<Row> rows(points.size());
  ParallelChunks(0, static_cast<std::int64_t>(points.size()),
                 [&](std::int64_t lo, std::int64_t hi, int) {
    for (std::int64_t p = lo; p < hi; ++p) {
      const Linearization lin =
          Linearize(fs.spec, points[p], fs.grid, config.scheme);
      const bool feasible = IsFeasible(fs.constraints, points[p]);
      const Gradient gs = StandardDerivative(fs.spec, lin);
      const Gradient gn = NonstandardDerivative(fs.spec, lin);
      auto gain = [&](const Gradient& g) {
        const BinaryVector star = SolveLinearized(g.entries, fs.constraints);
        return CertifyWithPayoff(g, star, oracle.payoff(star), ratio, feasible)
                   .post_payoff -
               j0;
      };
      rows[p] = {(gs.entries - gn.entries).lpNorm<Eigen::Infinity>(),
                 gain(gs), gain(gn)};
    }
  });
  double max_diff = 0.0;
  double mean_s = 0.0;
  double mean_n = 0.0;
  for (const Row& r : rows) {
    max_diff = std::max(max_diff, r.diff);
    mean_s += r.gain_standard / rows.size();
    mean_n += r.gain_nonstandard / rows.size();
  }
  if (config.format == Format::kCsv) {
    out << "index,alpha_bar,grad_max_diff,gain_standard,gain_nonstandard\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      out << i << "," << points[i].ToString() << "," << Fmt(rows[i].diff)
          << "," << Fmt(rows[i].gain_standard) << ","
          << Fmt(rows[i].gain_nonstandard) << "\n";
    }
    return;
  }
  Header(out, "compare-derivatives", config);
  out << "points: " << rows.size() << "\n";
  out << "grad_max_diff: " << Fmt(max_diff) << "\n";
  out << "mean_gain_standard: " << Fmt(mean_s) << "\n";
  out << "mean_gain_nonstandard: " << Fmt(mean_n) << "\n";
  out << "nonstandard_at_least_standard: " << (mean_n >= mean_s ? "yes" : "no")
      << "\n";
}

void CheckConcavity(const RunConfig& config, std::ostream& out) {
  const FirstStep fs = LoadFirstStep(config, SolverChoice::kOracle);
  const int m = fs.scenario.params.m;
  const BinaryVector bar =
      LinearizationPoint(config.policy, m, 0, BinaryVector(m), config.seed);
  const bool csv = config.format == Format::kCsv;
  if (csv) {
    out << "derivative,alpha_bar,holds,worst_violation,worst_alpha,checked,"
           "payoff_model\n";
  } else {
    Header(out, "check-concavity", config);
  }
  for (DerivativeKind kind : Kinds(config)) {
    // The nonstandard inequality is checked on the reformulated payoff.
    const SystemSpec spec = kind == DerivativeKind::kStandard
                                ? fs.spec
                                : Reformulate(fs.spec);
    const Gradient grad = StandardDerivative(spec, bar, fs.grid, config.scheme);
    const PayoffOracle oracle =
        MakePayoffOracle(spec, fs.grid, config.scheme, config.seed);
    const ConcavityReport r = CheckConcavityInequality(oracle.payoff, grad);
    const char* model = oracle.quadratic ? "quadratic" : "direct";
    if (csv) {
      out << DerivativeKindName(kind) << "," << bar.ToString() << ","
          << (r.holds ? 1 : 0) << "," << Fmt(r.worst_violation) << ","
          << r.worst.ToString() << "," << r.checked << "," << model << "\n";
    } else {
      out << DerivativeKindName(kind) << ": "
          << (r.holds ? "PASS" : "FAIL") << " worst_violation="
          << Fmt(r.worst_violation) << " at " << r.worst.ToString()
          << " (checked " << r.checked << " points, " << model << ")\n";
    }
  }
}

void CheckSubmodularCommand(const RunConfig& config, std::ostream& out) {
  const FirstStep fs = LoadFirstStep(config, SolverChoice::kOracle);
  const int m = fs.scenario.params.m;
  const PayoffOracle oracle =
      MakePayoffOracle(fs.spec, fs.grid, config.scheme, config.seed);
  const SetFunctionReport sub = CheckSubmodular(oracle.payoff, m);
  const SetFunctionReport mono = CheckMonotone(oracle.payoff, m);
  auto witness = [](const SetFunctionReport& r) {
    return r.witness.size() ? r.witness.ToString() : std::string();
  };
  if (config.format == Format::kCsv) {
    out << "property,holds,worst_violation,witness,first,second\n";
    out << "submodular," << (sub.holds ? 1 : 0) << ","
        << Fmt(sub.worst_violation) << "," << witness(sub) << ","
        << sub.first + 1 << "," << sub.second + 1 << "\n";
    out << "monotone," << (mono.holds ? 1 : 0) << ","
        << Fmt(mono.worst_violation) << "," << witness(mono) << ","
        << mono.first + 1 << ",\n";
    return;
  }
  Header(out, "check-submodular", config);
  out << "submodular: " << (sub.holds ? "PASS" : "FAIL")
      << " worst_second_difference=" << Fmt(sub.worst_violation)
      << " at X=" << witness(sub) << " s=" << sub.first + 1
      << " t=" << sub.second + 1 << "\n";
  out << "monotone: " << (mono.holds ? "PASS" : "FAIL")
      << " worst_drop=" << Fmt(mono.worst_violation) << " at X="
      << witness(mono) << " s=" << mono.first + 1 << "\n";
}

void OracleCommand(const RunConfig& config, std::ostream& out) {
  const Scenario s = Load(config);
  const int m = s.params.m;
  if (m > kMaxEnumerationDim) {
    throw Error(ErrorCode::kEnumerationRefused,
                "oracle limited to m <= 24, got " + std::to_string(m));
  }
  struct Row {
    double payoff, zero, opt, greedy, rho_post, base;
  };
  std::vector<Row> rows;
  HorizonOptions o = Options(config, SingleKind(config));
  o.observer = [&](const StepContext& ctx) {
    const PayoffOracle oracle =
        MakePayoffOracle(*ctx.spec, *ctx.grid, config.scheme, config.seed);
    const BruteForceResult best =
        SolveBruteForce(oracle.payoff, *ctx.constraints, m);
    const BinaryVector greedy =
        SolveGreedy(oracle.payoff, *ctx.constraints, m);
    const CertifiedSolution& c = *ctx.certificate;
    rows.push_back({c.post_payoff, oracle.payoff(BinaryVector(m)), best.value,
                    oracle.payoff(greedy), c.rho_post, c.base_payoff});
  };
  RunRecedingHorizon(s, o);
  const bool csv = config.format == Format::kCsv;
  if (csv) {
    out << "step,payoff,payoff_zero,payoff_oracle,payoff_greedy,ratio,"
           "greedy_ratio,rho_post,bound_holds\n";
  } else {
    Header(out, "oracle", config);
    out << "step  ratio  greedy_ratio  rho_post  bound\n";
  }
  double min_ratio = std::numeric_limits<double>::infinity();
  bool all_hold = true;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const Row& r = rows[k];
    const double ratio = GainRatio(r.payoff - r.zero, r.opt - r.zero);
    const double greedy_ratio = GainRatio(r.greedy - r.zero, r.opt - r.zero);
    const bool holds = r.rho_post * (r.opt - r.base) <=
                       r.payoff - r.base + 1e-6 * (1.0 + std::abs(r.opt));
    min_ratio = std::min(min_ratio, ratio);
    all_hold = all_hold && holds;
    if (csv) {
      out << k + 1 << "," << Fmt(r.payoff) << "," << Fmt(r.zero) << ","
          << Fmt(r.opt) << "," << Fmt(r.greedy) << "," << Fmt(ratio) << ","
          << Fmt(greedy_ratio) << "," << Fmt(r.rho_post) << ","
          << (holds ? 1 : 0) << "\n";
    } else {
      out << k + 1 << "  " << Fmt(ratio) << "  " << Fmt(greedy_ratio) << "  "
          << Fmt(r.rho_post) << "  " << (holds ? "holds" : "VIOLATED")
          << "\n";
    }
  }
  if (!csv) {
    out << "summary: min_ratio=" << Fmt(min_ratio)
        << " bound_holds_every_step=" << (all_hold ? "yes" : "no") << "\n";
  }
}

Scenario MinimalScenario() {
  Scenario s;
  EtpParams& p = s.params;
  p.m = 1;
  p.a = Matrix::Constant(1, 1, 1.0);
  p.b = Vector::Constant(1, 33.5);
  p.theta_ambient = Vector::Constant(1, 19.5);
  p.theta_lo = Vector::Constant(1, 0.0);
  p.theta_hi = Vector::Constant(1, 4.0);
  p.delta = Vector::Constant(1, 1.0);
  p.c = Vector::Constant(1, 10.0);
  p.x0 = Vector::Constant(1, 3.0);
  s.num_steps = 1;
  s.problem = TargetBandCase{Vector::Zero(1), Vector::Constant(1, 10.0)};
  return s;
}

void Generate(const RunConfig& config, std::ostream& out) {
  Scenario s;
  if (config.preset == "case1") {
    s = CaseOneScenario(config.units, config.seed);
  } else if (config.preset == "case2") {
    s = CaseTwoScenario(config.units, config.seed);
  } else if (config.preset == "transient") {
    s = TransientScenario(config.units, config.seed);
  } else if (config.preset == "minimal") {
    s = MinimalScenario();
  } else {
    throw Error(ErrorCode::kInvalidArgument,
                "unknown preset '" + config.preset + "'");
  }
  WriteScenario(s, out);
}

void Dispatch(const RunConfig& config, std::ostream& out) {
  if (config.grid < 2) {
    throw Error(ErrorCode::kInvalidArgument, "--grid must be at least 2");
  }
  switch (config.command) {
    case Command::kOptimize:
      return Optimize(config, out);
    case Command::kCertify:
      return Certify(config, out);
    case Command::kSweepLinearization:
      return SweepLinearization(config, out);
    case Command::kCompareDerivatives:
      return CompareDerivatives(config, out);
    case Command::kCheckConcavity:
      return CheckConcavity(config, out);
    case Command::kCheckSubmodular:
      return CheckSubmodularCommand(config, out);
    case Command::kOracle:
      return OracleCommand(config, out);
    case Command::kGenerate:
      return Generate(config, out);
  }
}

void ErrorLine(std::ostream& err, std::string_view code, int exit,
               std::optional<long> index, const std::string& message) {
  err << "error: code=" << code << " exit=" << exit;
  if (index) err << " index=" << *index;
  err << " message=" << message << "\n";
}

}  // namespace

int ExitCode(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInfeasible:
    case ErrorCode::kTuViolation:
      return 3;
    case ErrorCode::kIntegrationDiverged:
    case ErrorCode::kAdjointDiverged:
      return 4;
    default:
      return 2;
  }
}

int Run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::ostringstream buffer;
  try {
    Dispatch(config, buffer);
  } catch (const Error& e) {
    const int code = ExitCode(e.code());
    ErrorLine(err, ErrorCodeName(e.code()), code, e.index(), e.what());
    return code;
  } catch (const std::exception& e) {
    ErrorLine(err, "internal", 4, std::nullopt, e.what());
    return 4;
  }
  if (config.output_path.empty() || config.output_path == "-") {
    out << buffer.str();
    return 0;
  }
  std::ofstream file(config.output_path, std::ios::binary);
  file << buffer.str();
  if (!file) {
    ErrorLine(err, "io", 2, std::nullopt,
              "cannot write " + config.output_path);
    return 2;
  }
  return 0;
}

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Binary decision optimization for ODE systems with "
               "adjoint-based derivatives and certified bounds",
               "cdsopt"};
  app.require_subcommand(1);
  RunConfig config;
  std::string solver = "tu";
  std::string scheme = "euler";
  std::string format = "csv";
  std::string policy = "zeros";

  const std::vector<std::pair<const char*, Command>> commands = {
      {"optimize", Command::kOptimize},
      {"certify", Command::kCertify},
      {"sweep-linearization", Command::kSweepLinearization},
      {"compare-derivatives", Command::kCompareDerivatives},
      {"check-concavity", Command::kCheckConcavity},
      {"check-submodular", Command::kCheckSubmodular},
      {"oracle", Command::kOracle},
      {"generate", Command::kGenerate},
  };
  const std::vector<std::string> descriptions = {
      "Receding-horizon optimization; per-step, per-unit CSV",
      "Receding-horizon run reporting every certificate",
      "Payoff ratio to the oracle over linearization points",
      "Standard vs nonstandard derivative on the first step",
      "Exhaustive concavity inequality at the linearization point",
      "Exhaustive submodularity and monotonicity of the first-step payoff",
      "Per-step comparison against brute force and greedy",
      "Write a preset scenario file",
  };
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    CLI::App* sub = app.add_subcommand(commands[i].first, descriptions[i]);
    sub->add_option("--seed", config.seed, "Random seed");
    sub->add_option("--out", config.output_path, "Output path, - for stdout");
    if (commands[i].second == Command::kGenerate) {
      sub->add_option("--preset", config.preset, "Preset scenario")
          ->check(CLI::IsMember({"case1", "case2", "transient", "minimal"}));
      sub->add_option("--units", config.units,
                      "Unit count (multiple of 10)");
    } else {
      sub->add_option("--scenario", config.scenario_path, "Scenario file")
          ->required();
      sub->add_option("--derivative", config.derivative, "Derivative kind")
          ->check(CLI::IsMember({"standard", "nonstandard", "both"}));
      sub->add_option("--solver", solver, "Linearized-problem solver")
          ->check(CLI::IsMember({"l0", "tu", "knapsack", "oracle", "greedy"}));
      sub->add_option("--grid", config.grid, "Time points per step")
          ->check(CLI::Range(2, 10000000));
      sub->add_option("--scheme", scheme, "Integrator")
          ->check(CLI::IsMember({"euler", "rk4"}));
      sub->add_option("--format", format, "Output format")
          ->check(CLI::IsMember({"csv", "report"}));
      sub->add_option("--policy", policy, "Linearization point policy")
          ->check(CLI::IsMember({"zeros", "warm", "random"}));
      sub->add_option("--samples", config.samples,
                      "Linearization points for sweeps")
          ->check(CLI::Range(1, 1 << 24));
    }
    subs.push_back(sub);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    ErrorLine(err, "usage", 2, std::nullopt, e.what());
    return 2;
  }
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (subs[i]->parsed()) config.command = commands[i].second;
  }
  config.solver = ParseSolverChoice(solver);
  config.scheme = ParseScheme(scheme);
  config.format = format == "csv" ? Format::kCsv : Format::kReport;
  config.policy = ParseLinearizationPolicy(policy);
  return Run(config, out, err);
}

}  // namespace cdsopt::cli
