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


#include "cdsopt/refrigeration.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <string>
#include <utility>

#include "cdsopt/error.h"
#include "cdsopt/surrogate.h"

namespace cdsopt {

namespace {

[[noreturn]] void Invalid(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::kInvalidParams, field + ": " + what);
}

void CheckLength(const Vector& v, int n, const std::string& field) {
  if (v.size() != n) {
    Invalid(field, "expected length " + std::to_string(n) + ", got " +
                       std::to_string(v.size()));
  }
  if (!v.allFinite()) Invalid(field, "entries must be finite");
}

// Uniform double in [0, 1) built from the raw 64-bit stream, so fleets are
// reproducible across standard libraries.
double Uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Matrix DriftMatrix(const EtpParams& p) {
  Matrix a = p.a;
  for (int i = 0; i < p.m; ++i) a(i, i) = -p.a.row(i).sum();
  return a;
}

Vector AmbientForcing(const EtpParams& p) {
  return p.a.diagonal().cwiseProduct(p.theta_ambient);
}

SystemSpec PenaltySystem(const EtpParams& p, double horizon_hours) {
  SystemSpec spec;
  spec.state_dim = p.m;
  spec.decision_dim = p.m;
  spec.initial_state = p.x0;
  spec.horizon = horizon_hours;
  const Vector lo = p.theta_lo;
  const Vector hi = p.theta_hi;
  const Vector delta = p.delta;
  spec.running_payoff = [lo, hi, delta](const Vector& x, const Vector&,
                                        double) {
    double sum = 0.0;
    for (int i = 0; i < x.size(); ++i) {
      sum += Penalty(x[i], lo[i], hi[i], delta[i]);
    }
    return -sum;
  };
  spec.jac_r_x = [lo, hi, delta](const Vector& x, const Vector&,
                                 double) -> Vector {
    return -delta.cwiseProduct(4.0 * x - 2.0 * lo - 2.0 * hi);
  };
  spec.terminal_payoff = [](const Vector&) { return 0.0; };
  const int n = p.m;
  spec.jac_q_x = [n](const Vector&) -> Vector { return Vector::Zero(n); };
  spec.jac_r_alpha = [n](const Vector&, const Vector&, double) -> Vector {
    return Vector::Zero(n);
  };
  spec.relaxable = true;
  return spec;
}

}  // namespace

void EtpParams::Validate() const {
  if (m <= 0) Invalid("m", "must be positive");
  if (a.rows() != m || a.cols() != m) Invalid("a", "must be m x m");
  if (!a.allFinite() || a.minCoeff() < 0.0) {
    Invalid("a", "entries must be finite and nonnegative");
  }
  CheckLength(b, m, "b");
  CheckLength(theta_ambient, m, "theta_ambient");
  CheckLength(theta_lo, m, "theta_lo");
  CheckLength(theta_hi, m, "theta_hi");
  CheckLength(delta, m, "delta");
  CheckLength(c, m, "c");
  CheckLength(x0, m, "x0");
  for (int i = 0; i < m; ++i) {
    if (!(b[i] > 0.0)) Invalid("b", "entries must be positive");
    if (!(theta_lo[i] < theta_hi[i])) {
      Invalid("theta_lo", "must be below theta_hi at unit " +
                              std::to_string(i));
    }
    if (delta[i] < 0.0) Invalid("delta", "entries must be nonnegative");
    if (c[i] < 0.0) Invalid("c", "entries must be nonnegative");
  }
}

void Scenario::Validate() const {
  params.Validate();
  const int m = params.m;
  if (!(step_minutes >= 10.0) || !std::isfinite(step_minutes)) {
    Invalid("step_minutes", "must be at least 10");
  }
  if (num_steps < 1) Invalid("num_steps", "must be positive");
  if (const auto* band = std::get_if<TargetBandCase>(&problem)) {
    CheckLength(band->y_lo, num_steps, "case.y_lo");
    CheckLength(band->y_hi, num_steps, "case.y_hi");
    for (int k = 0; k < num_steps; ++k) {
      if (band->y_lo[k] < 0.0) Invalid("case.y_lo", "must be nonnegative");
      if (band->y_hi[k] < band->y_lo[k]) {
        Invalid("case.y_hi", "must not be below y_lo at step " +
                                 std::to_string(k + 1));
      }
    }
  } else {
    const auto& tu = std::get<TuCase>(problem);
    if (tu.q.cols() != m) Invalid("case.q", "must have m columns");
    if (tu.r.size() != tu.q.rows()) Invalid("case.r", "length must match q");
    if (!tu.z_bar.empty()) {
      if (tu.q.rows() == 0) Invalid("case.z_bar", "needs at least one row");
      if (static_cast<int>(tu.z_bar.size()) != num_steps) {
        Invalid("case.z_bar", "length must equal num_steps");
      }
    }
  }
  if (transient) {
    CheckLength(transient->xi, m, "transient.xi");
    if (transient->xi.minCoeff() <= 0.0) {
      Invalid("transient.xi", "entries must be positive");
    }
    std::set<int> seen;
    for (int i : transient->members) {
      if (i < 0 || i >= m) Invalid("transient.members", "index out of range");
      if (!seen.insert(i).second) {
        Invalid("transient.members", "duplicate index");
      }
    }
  }
}

double Penalty(double x, double theta_lo, double theta_hi, double delta) {
  const double mid = theta_lo + theta_hi;
  return delta * ((theta_lo - x) * (theta_lo - x) +
                  (x - theta_hi) * (x - theta_hi) - mid * mid / 2.0);
}

SystemSpec BuildEtpSystem(const EtpParams& params, double horizon_hours) {
  params.Validate();
  SystemSpec spec = PenaltySystem(params, horizon_hours);
  const Matrix a = DriftMatrix(params);
  const Vector theta = AmbientForcing(params);
  const Vector b = params.b;
  spec.vector_field = [a, theta, b](const Vector& x, const Vector& alpha,
                                    double) -> Vector {
    return a * x - b.cwiseProduct(alpha) + theta;
  };
  spec.jac_f_x = [a](const Vector&, const Vector&, double) -> Matrix {
    return a;
  };
  const Matrix bmat = Matrix((-b).asDiagonal());
  spec.jac_f_alpha = [bmat](const Vector&, const Vector&, double) -> Matrix {
    return bmat;
  };
  return spec;
}

SystemSpec BuildTransientSystem(const EtpParams& params, const Vector& xi,
                                const std::vector<int>& members,
                                double horizon_hours) {
  params.Validate();
  CheckLength(xi, params.m, "transient.xi");
  std::vector<bool> member(params.m, false);
  for (int i : members) {
    if (i < 0 || i >= params.m) {
      Invalid("transient.members", "index " + std::to_string(i) +
                                       " out of range");
    }
    if (!(xi[i] > 0.0)) Invalid("transient.xi", "entries must be positive");
    member[i] = true;
  }
  SystemSpec spec = PenaltySystem(params, horizon_hours);
  const Matrix a = DriftMatrix(params);
  const Vector theta = AmbientForcing(params);
  const Vector b = params.b;
  spec.vector_field = [a, theta, b, xi, member](const Vector& x,
                                                const Vector& alpha,
                                                double t) -> Vector {
    Vector f = a * x + theta;
    for (int i = 0; i < x.size(); ++i) {
      f[i] -= member[i] ? b[i] * std::exp(-xi[i] * (1.0 - alpha[i]) * t)
                        : b[i] * alpha[i];
    }
    return f;
  };
  spec.jac_f_x = [a](const Vector&, const Vector&, double) -> Matrix {
    return a;
  };
  spec.jac_f_alpha = [b, xi, member](const Vector& x, const Vector& alpha,
                                     double t) -> Matrix {
    Matrix j = Matrix::Zero(x.size(), x.size());
    for (int i = 0; i < x.size(); ++i) {
      j(i, i) = member[i] ? -b[i] * xi[i] * t *
                                std::exp(-xi[i] * (1.0 - alpha[i]) * t)
                          : -b[i];
    }
    return j;
  };
  return spec;
}

EtpParams DefaultFleet(int m, std::uint64_t seed) {
  if (m <= 0 || m % kBlockSize != 0) {
    Invalid("m", "must be a positive multiple of 10, got " + std::to_string(m));
  }
  EtpParams p;
  p.m = m;
  p.a = Matrix::Zero(m, m);
  p.b.resize(m);
  p.x0.resize(m);
  p.theta_ambient = Vector::Constant(m, 19.5);
  p.theta_lo = Vector::Constant(m, 0.0);
  p.theta_hi = Vector::Constant(m, 4.0);
  p.delta = Vector::Constant(m, 1.0);
  p.c = Vector::Constant(m, 10.0);
  std::mt19937_64 rng(seed);
  for (int block = 0; block < m / kBlockSize; ++block) {
    auto factor = [&] {
      return block == 0 ? 1.0 : 0.9 + 0.2 * Uniform(rng);
    };
    const int base = block * kBlockSize;
    for (int i = 0; i < kBlockSize; ++i) {
      p.a(base + i, base + i) = 1.0 * factor();
      p.b[base + i] = 33.5 * factor();
      p.x0[base + i] = (1.0 + 0.3 * i) * factor();
    }
    auto link = [&](int i, int j, double w) {
      const double v = w * factor();
      p.a(base + i, base + j) = v;
      p.a(base + j, base + i) = v;
    };
    for (int i = 0; i < kBlockSize; ++i) link(i, (i + 1) % kBlockSize, 0.3);
    for (int i = 0; i < kBlockSize / 2; ++i) link(i, i + kBlockSize / 2, 0.15);
  }
  return p;
}

namespace {

bool IsPeak(int k) { return k >= 8 && k <= 15; }

}  // namespace

Scenario CaseOneScenario(int m, std::uint64_t seed) {
  Scenario s;
  s.params = DefaultFleet(m, seed);
  s.num_steps = 32;
  TargetBandCase band;
  band.y_lo = Vector::Zero(s.num_steps);
  band.y_hi.resize(s.num_steps);
  for (int k = 0; k < s.num_steps; ++k) {
    band.y_hi[k] = (IsPeak(k) ? 0.55 : 0.50) * m * 10.0;
  }
  s.problem = std::move(band);
  return s;
}

IntMatrix BlockTuMatrix(int m) {
  if (m <= 0 || m % kBlockSize != 0) {
    Invalid("m", "must be a positive multiple of 10");
  }
  const int blocks = m / kBlockSize;
  IntMatrix q = IntMatrix::Zero(4 * blocks + 1, m);
  for (int l = 0; l < blocks; ++l) {
    const int base = l * kBlockSize;
    const int row = 4 * l;
    q(row, base + 0) = q(row, base + 1) = 1;
    q(row + 1, base + 0) = q(row + 1, base + 2) = 1;
    q(row + 2, base + 9) = q(row + 2, base + 8) = 1;
    q(row + 3, base + 9) = q(row + 3, base + 7) = 1;
    for (int j = 3; j <= 6; ++j) q(4 * blocks, base + j) = 1;
  }
  return q;
}

Scenario CaseTwoScenario(int m, std::uint64_t seed) {
  Scenario s;
  s.params = DefaultFleet(m, seed);
  s.num_steps = 32;
  TuCase tu;
  tu.q = BlockTuMatrix(m);
  tu.r = IntVector::Ones(tu.q.rows());
  const int group = 4 * m / kBlockSize;
  for (int k = 0; k < s.num_steps; ++k) {
    tu.z_bar.push_back(static_cast<int>(
        std::floor((IsPeak(k) ? 0.625 : 0.5) * group)));
  }
  tu.r[tu.r.size() - 1] = tu.z_bar[0];
  s.problem = std::move(tu);
  return s;
}

std::vector<int> DefaultTransientMembers(int m) {
  std::vector<int> members;
  for (int i = 0; i < m; ++i) {
    const int local = i % kBlockSize;
    if (!(local == 1 || local == 3 || local == 5 || local == 7)) {
      members.push_back(i);
    }
  }
  return members;
}

Scenario TransientScenario(int m, std::uint64_t seed) {
  Scenario s = CaseOneScenario(m, seed);
  s.num_steps = 1;
  auto& band = std::get<TargetBandCase>(s.problem);
  band.y_lo = band.y_lo.head(1).eval();
  band.y_hi = band.y_hi.head(1).eval();
  s.transient = TransientSpec{Vector::Constant(m, 100.0),
                              DefaultTransientMembers(m)};
  return s;
}

std::string_view SolverChoiceName(SolverChoice solver) {
  switch (solver) {
    case SolverChoice::kL0:
      return "l0";
    case SolverChoice::kTu:
      return "tu";
    case SolverChoice::kKnapsack:
      return "knapsack";
    case SolverChoice::kOracle:
      return "oracle";
    case SolverChoice::kGreedy:
      return "greedy";
  }
  return "unknown";
}

SolverChoice ParseSolverChoice(std::string_view name) {
  for (SolverChoice s : {SolverChoice::kL0, SolverChoice::kTu,
                         SolverChoice::kKnapsack, SolverChoice::kOracle,
                         SolverChoice::kGreedy}) {
    if (SolverChoiceName(s) == name) return s;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown solver '" + std::string(name) + "'");
}

std::string_view LinearizationPolicyName(LinearizationPolicy policy) {
  switch (policy) {
    case LinearizationPolicy::kZeros:
      return "zeros";
    case LinearizationPolicy::kWarmStart:
      return "warm";
    case LinearizationPolicy::kRandom:
      return "random";
  }
  return "unknown";
}

LinearizationPolicy ParseLinearizationPolicy(std::string_view name) {
  for (LinearizationPolicy p :
       {LinearizationPolicy::kZeros, LinearizationPolicy::kWarmStart,
        LinearizationPolicy::kRandom}) {
    if (LinearizationPolicyName(p) == name) return p;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown linearization policy '" + std::string(name) + "'");
}

SystemSpec StepSystem(const Scenario& scenario, const Vector& x_init) {
  EtpParams p = scenario.params;
  p.x0 = x_init;
  if (scenario.transient) {
    return BuildTransientSystem(p, scenario.transient->xi,
                                scenario.transient->members,
                                scenario.StepHours());
  }
  return BuildEtpSystem(p, scenario.StepHours());
}

ConstraintSet StepConstraints(const Scenario& scenario, int k,
                              SolverChoice solver) {
  const int m = scenario.params.m;
  if (const auto* tu = std::get_if<TuCase>(&scenario.problem)) {
    if (solver == SolverChoice::kL0 || solver == SolverChoice::kKnapsack) {
      throw Error(ErrorCode::kInvalidArgument,
                  "solver " + std::string(SolverChoiceName(solver)) +
                      " cannot handle a TU case");
    }
    TuConstraint c{tu->q, tu->r};
    if (!tu->z_bar.empty()) c.r[c.r.size() - 1] = tu->z_bar.at(k);
    return c;
  }
  const auto& band = std::get<TargetBandCase>(scenario.problem);
  const Vector& c = scenario.params.c;
  const double lo = band.y_lo[k];
  const double hi = band.y_hi[k];
  const bool uniform = c.maxCoeff() == c.minCoeff() && c[0] > 0.0;
  if (solver == SolverChoice::kKnapsack ||
      (!uniform && solver != SolverChoice::kL0 && solver != SolverChoice::kTu)) {
    if (lo > 0.0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "knapsack form needs a zero lower band");
    }
    return KnapsackConstraint{c, hi};
  }
  if (!uniform) {
    throw Error(ErrorCode::kInvalidArgument,
                "solver " + std::string(SolverChoiceName(solver)) +
                    " needs equal positive power draws");
  }
  const int k_min = static_cast<int>(std::ceil(lo / c[0] - 1e-9));
  const int k_max =
      std::min(m, static_cast<int>(std::floor(hi / c[0] + 1e-9)));
  if (k_min > k_max) {
    throw Error(ErrorCode::kInfeasible,
                "target band admits no unit count at step " +
                    std::to_string(k + 1),
                k + 1);
  }
  if (solver == SolverChoice::kTu) {
    TuConstraint rows{IntMatrix(2, m), IntVector(2)};
    rows.q.row(0).setOnes();
    rows.q.row(1).setConstant(-1);
    rows.r << k_max, -k_min;
    return rows;
  }
  return L0Band{k_min, k_max};
}

BinaryVector LinearizationPoint(LinearizationPolicy policy, int m, int k,
                                const BinaryVector& previous,
                                std::uint64_t seed) {
  switch (policy) {
    case LinearizationPolicy::kZeros:
      return BinaryVector(m);
    case LinearizationPolicy::kWarmStart:
      return previous.size() == m ? previous : BinaryVector(m);
    case LinearizationPolicy::kRandom: {
      std::mt19937_64 rng(seed ^ (0x9E3779B97F4A7C15ULL *
                                  static_cast<std::uint64_t>(k + 1)));
      BinaryVector v(m);
      for (int i = 0; i < m; ++i) v.Set(i, (rng() >> 63) != 0);
      return v;
    }
  }
  return BinaryVector(m);
}

std::vector<StepResult> RunRecedingHorizon(const Scenario& scenario,
                                           const HorizonOptions& options) {
  scenario.Validate();
  const int m = scenario.params.m;
  const TimeGrid grid(scenario.StepHours(), options.grid_points);
  std::vector<StepResult> results;
  Vector x = scenario.params.x0;
  BinaryVector previous(m);
  for (int k = 0; k < scenario.num_steps; ++k) {
    try {
      const SystemSpec spec = StepSystem(scenario, x);
      const ConstraintSet constraints =
          StepConstraints(scenario, k, options.solver);
      const BinaryVector bar =
          LinearizationPoint(options.policy, m, k, previous, options.seed);
      const Linearization lin = Linearize(spec, bar, grid, options.scheme);
      const Gradient grad = ComputeDerivative(options.kind, spec, lin);

      BinaryVector star;
      double ratio = 1.0;
      switch (options.solver) {
        case SolverChoice::kL0:
        case SolverChoice::kTu:
        case SolverChoice::kKnapsack:
          star = SolveLinearized(grad.entries, constraints);
          ratio = SolverRatio(constraints);
          break;
        case SolverChoice::kOracle:
        case SolverChoice::kGreedy: {
          const PayoffOracle oracle =
              MakePayoffOracle(spec, grid, options.scheme, options.seed);
          star = options.solver == SolverChoice::kOracle
                     ? SolveBruteForce(oracle.payoff, constraints, m).alpha
                     : SolveGreedy(oracle.payoff, constraints, m);
          break;
        }
      }
      const CertifiedSolution cert =
          Certify(spec, bar, grad, star, grid, options.scheme, ratio,
                  IsFeasible(constraints, bar));
      if (options.observer) {
        options.observer(
            StepContext{k + 1, &spec, &grid, &constraints, &grad, &cert});
      }
      const Trajectory traj =
          Integrate(spec, cert.alpha_post, grid, options.scheme);

      StepResult r;
      r.step = k + 1;
      r.alpha = cert.alpha_post;
      r.alpha_bar = bar;
      r.alpha_star = star;
      r.payoff = cert.post_payoff;
      r.base_payoff = cert.base_payoff;
      r.optimal = cert.optimal;
      r.rho = cert.rho;
      r.rho_post = cert.rho_post;
      r.temperatures_end = traj.Final();
      r.power_kw = scenario.params.c.dot(cert.alpha_post.ToReal());
      results.push_back(std::move(r));
      x = traj.Final();
      previous = cert.alpha_post;
    } catch (const Error& e) {
      if (e.index()) throw;
      throw Error(e.code(),
                  std::string(e.what()) + " (step " + std::to_string(k + 1) +
                      ")",
                  k + 1);
    }
  }
  return results;
}

}  // namespace cdsopt
