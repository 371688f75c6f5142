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

#ifndef CDSOPT_ADJOINT_H_
#define CDSOPT_ADJOINT_H_

#include <vector>

#include "cdsopt/sysmodel.h"

namespace cdsopt {

// One integrator stage visited by the backward sweep: its input state and
// time, and the adjoint weight of its slope f(state, alpha, time).
struct StageRecord {
  Vector state;
  double time = 0.0;
  Vector weight;
};

// Costate along a forward trajectory.
//
// The backward sweep is the exact reverse-mode linearization of the forward
// scheme together with the trapezoid payoff, so sensitivities assembled from
// it are exact derivatives of the discrete payoff. Two views are kept:
//
//  * `multipliers` (mu_k): the discrete Lagrange multipliers of the knot
//    states, i.e. d(payoff)/d(x_k).
//  * `values` (lambda_k): the costate of the continuous adjoint system,
//    lambda_k = mu_k - (h/2) dr/dx(x_k) for k >= 1 and lambda_0 = mu_0.
//    The final row is exactly dq/dx at the final state and the rows are a
//    second-order approximation of lambda(t_k).
struct AdjointTrajectory {
  TimeGrid grid;
  Scheme scheme = Scheme::kEuler;
  Matrix values;
  Matrix multipliers;
  // (num_points - 1) * stage_count records, step-major.
  std::vector<StageRecord> stages;
  int stage_count = 1;

  Vector Costate(int k) const { return values.row(k).transpose(); }
  const StageRecord& Stage(int step, int stage) const {
    return stages[static_cast<std::size_t>(step) * stage_count + stage];
  }
};

// H(x, lambda, alpha, t) = lambda^T f(x, alpha, t) + r(x, alpha, t).
double Hamiltonian(const SystemSpec& spec, const Vector& state,
                   const Vector& costate, const Vector& alpha, double t);

// Solves -lambda' = (df/dx)^T lambda + (dr/dx)^T backward from
// lambda(T) = dq/dx(x(T)), reading the states stored in `forward` and
// mirroring its scheme. Throws kAdjointDiverged (index = knot) on a
// non-finite costate and kDimension if `forward` does not fit the spec.
AdjointTrajectory SolveAdjoint(const SystemSpec& spec, const Vector& alpha,
                               const Trajectory& forward);
AdjointTrajectory SolveAdjoint(const SystemSpec& spec,
                               const BinaryVector& alpha,
                               const Trajectory& forward);

}  // namespace cdsopt

#endif  // CDSOPT_ADJOINT_H_
