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

// One explicit step and its exact reverse-mode linearization. Shared by the
// forward integrator and the discrete adjoint so both see the same stages.

#ifndef CDSOPT_SRC_STEPPER_H_
#define CDSOPT_SRC_STEPPER_H_

#include <array>
#include <functional>

#include "cdsopt/sysmodel.h"

namespace cdsopt::internal {

using AutonomousField = std::function<Vector(const Vector& x, double t)>;
using StateJacobian = std::function<Matrix(const Vector& x, double t)>;

inline int StageCount(Scheme scheme) {
  return scheme == Scheme::kEuler ? 1 : 4;
}

// Stage inputs y_s, stage times t_s and stage slopes k_s = f(y_s, t_s).
struct Stages {
  int count = 0;
  std::array<Vector, 4> state;
  std::array<double, 4> time{};
  std::array<Vector, 4> slope;
};

Stages ComputeStages(const AutonomousField& field, const Vector& x, double t,
                     double h, Scheme scheme);

// x_{k+1} from the stage slopes.
Vector Advance(const Stages& stages, const Vector& x, double h, Scheme scheme);

// Reverse sweep of one step. Given the adjoint of x_{k+1}, returns the
// adjoint of x_k and fills `slope_adjoint[s]`, the adjoint of stage slope
// k_s. The sensitivity of x_{k+1} to any parameter p entering f is then
// sum_s (df/dp at stage s)^T slope_adjoint[s].
Vector ReverseStep(const Stages& stages, const Vector& out_adjoint,
                   const StateJacobian& jacobian, double h, Scheme scheme,
                   std::array<Vector, 4>& slope_adjoint);

// Integrates x' = field(x, t) from x0 without validating alpha.
Trajectory Run(const AutonomousField& field, const Vector& x0,
               const TimeGrid& grid, Scheme scheme);

// Payoff of the (possibly out-of-box) relaxed decision `alpha`.
double PayoffUnchecked(const SystemSpec& spec, const Vector& alpha,
                       const TimeGrid& grid, Scheme scheme);

}  // namespace cdsopt::internal

#endif  // CDSOPT_SRC_STEPPER_H_
