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


// Supermarket refrigeration benchmark: coupled equivalent-thermal-parameter
// (ETP) room dynamics with ON/OFF evaporators, a comfort-band penalty, and a
// receding-horizon direct-load-control loop.
//
// Units: temperatures in degrees C, time in hours, power in kW.

#ifndef CDSOPT_REFRIGERATION_H_
#define CDSOPT_REFRIGERATION_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "cdsopt/bounds.h"
#include "cdsopt/combisolve.h"
#include "cdsopt/derivative.h"
#include "cdsopt/sysmodel.h"

namespace cdsopt {

struct EtpParams {
  int m = 0;
  Matrix a;  // a(i, i) couples room i to ambient; a(i, j) room i to room j
  Vector b;  // cooling rate when ON, degC per hour
  Vector theta_ambient;
  Vector theta_lo;
  Vector theta_hi;
  Vector delta;
  Vector c;  // power draw when ON, kW
  Vector x0;

  // Throws kInvalidParams naming the offending field.
  void Validate() const;
};

// Sum of c_i alpha_i bounded in [y_lo^k, y_hi^k] at step k.
struct TargetBandCase {
  Vector y_lo;
  Vector y_hi;
};

// Q alpha <= r; if z_bar is nonempty its k-th entry replaces the last
// entry of r at step k.
struct TuCase {
  IntMatrix q;
  IntVector r;
  std::vector<int> z_bar;
};

// Units in `members` shut down gradually: their cooling term becomes
// -b_i exp(-xi_i (1 - u_i) t), with t measured from the start of the step.
struct TransientSpec {
  Vector xi;
  std::vector<int> members;
};

struct Scenario {
  EtpParams params;
  double step_minutes = 15.0;
  int num_steps = 32;
  std::variant<TargetBandCase, TuCase> problem;
  std::optional<TransientSpec> transient;

  double StepHours() const { return step_minutes / 60.0; }
  // Throws kInvalidParams on any invariant violation.
  void Validate() const;
};

// delta [(lo - x)^2 + (x - hi)^2 - (lo + hi)^2 / 2].
double Penalty(double x, double theta_lo, double theta_hi, double delta);

// x' = A x + B alpha + Theta with r = -sum_i P_i(x_i) and q = 0. The
// initial state is params.x0 and the horizon `horizon_hours`.
SystemSpec BuildEtpSystem(const EtpParams& params, double horizon_hours);

// As BuildEtpSystem with the gradual-shutdown term for `members`.
// Throws kInvalidParams for a member out of range or a non-positive xi.
SystemSpec BuildTransientSystem(const EtpParams& params, const Vector& xi,
                                const std::vector<int>& members,
                                double horizon_hours);

inline constexpr int kBlockSize = 10;

// Synthetic fleet of m / 10 blocks. Each block is a ring of ten rooms with
// chords i <-> i + 5, a_ii = 1 per hour, ring coupling 0.3, chord coupling
// 0.15 and b_i = 33.5 (about 4 degC of net cooling per 15 minutes at
// mid-band). The first block is nominal; every other block perturbs a, b
// and x0 by a uniform factor in [0.9, 1.1] drawn from `seed`.
// theta = 19.5, band [0, 4], delta = 1, c = 10 kW. Throws kInvalidParams
// unless m is a positive multiple of 10.
EtpParams DefaultFleet(int m, std::uint64_t seed);

// Upper band 0.55 * 10 m kW for steps 9..16 (1-based) and 0.50 * 10 m kW
// otherwise, lower band 0, K = 32.
Scenario CaseOneScenario(int m, std::uint64_t seed);

// Per block: a1 + a2 <= 1, a1 + a3 <= 1, a10 + a9 <= 1, a10 + a8 <= 1;
// then one row summing units 4..7 of every block, bounded by z_bar^k.
IntMatrix BlockTuMatrix(int m);
// z_bar^k = 0.625 (peak) or 0.5 (off-peak) of the 4m/10 aggregated units.
Scenario CaseTwoScenario(int m, std::uint64_t seed);

// Local positions 2, 4, 6, 8 (1-based) of each block keep the base model;
// the others shut down gradually with xi = 100 per hour. One step under
// the Case I band.
std::vector<int> DefaultTransientMembers(int m);
Scenario TransientScenario(int m, std::uint64_t seed);

enum class LinearizationPolicy { kZeros, kWarmStart, kRandom };
enum class SolverChoice { kL0, kTu, kKnapsack, kOracle, kGreedy };

std::string_view SolverChoiceName(SolverChoice solver);
SolverChoice ParseSolverChoice(std::string_view name);
std::string_view LinearizationPolicyName(LinearizationPolicy policy);
LinearizationPolicy ParseLinearizationPolicy(std::string_view name);

// Per-step system starting from `x_init`.
SystemSpec StepSystem(const Scenario& scenario, const Vector& x_init);

// Constraint set for step k (0-based) in the form `solver` consumes.
// Target bands map to an l0 band (uniform c, for l0 / tu / oracle /
// greedy) or a knapsack row (lower band 0). Throws kInvalidArgument for an
// inconsistent solver/case pair and kInfeasible (index = k) when the band
// admits no integer count.
ConstraintSet StepConstraints(const Scenario& scenario, int k,
                              SolverChoice solver);

struct StepContext {
  int step = 0;
  const SystemSpec* spec = nullptr;
  const TimeGrid* grid = nullptr;
  const ConstraintSet* constraints = nullptr;
  const Gradient* gradient = nullptr;
  const CertifiedSolution* certificate = nullptr;
};

struct HorizonOptions {
  DerivativeKind kind = DerivativeKind::kStandard;
  LinearizationPolicy policy = LinearizationPolicy::kZeros;
  SolverChoice solver = SolverChoice::kTu;
  int grid_points = 200;
  Scheme scheme = Scheme::kEuler;
  std::uint64_t seed = 1;
  // Called after each step is certified, before the state advances.
  std::function<void(const StepContext&)> observer;
};

struct StepResult {
  int step = 0;  // 1-based
  BinaryVector alpha;  // applied decision alpha_post
  BinaryVector alpha_bar;
  BinaryVector alpha_star;
  double payoff = 0.0;  // J(alpha)
  double base_payoff = 0.0;
  bool optimal = false;
  double rho = 0.0;
  double rho_post = 0.0;
  Vector temperatures_end;
  double power_kw = 0.0;
};

// Runs the K-step receding-horizon loop. Throws kInfeasible with the step
// index when a step's constraints cannot be met.
std::vector<StepResult> RunRecedingHorizon(const Scenario& scenario,
                                           const HorizonOptions& options);

// The linearization point the policy picks at step k given the previous
// applied decision.
BinaryVector LinearizationPoint(LinearizationPolicy policy, int m, int k,
                                const BinaryVector& previous,
                                std::uint64_t seed);

}  // namespace cdsopt

#endif  // CDSOPT_REFRIGERATION_H_
