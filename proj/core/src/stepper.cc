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

#include "stepper.h"

#include <string>

#include "cdsopt/error.h"

namespace cdsopt::internal {

Stages ComputeStages(const AutonomousField& field, const Vector& x, double t,
                     double h, Scheme scheme) {
  Stages st;
  if (scheme == Scheme::kEuler) {
    st.count = 1;
    st.state[0] = x;
    st.time[0] = t;
    st.slope[0] = field(x, t);
    return st;
  }
  st.count = 4;
  st.state[0] = x;
  st.time[0] = t;
  st.slope[0] = field(st.state[0], st.time[0]);
  st.state[1] = x + 0.5 * h * st.slope[0];
  st.time[1] = t + 0.5 * h;
  st.slope[1] = field(st.state[1], st.time[1]);
  st.state[2] = x + 0.5 * h * st.slope[1];
  st.time[2] = t + 0.5 * h;
  st.slope[2] = field(st.state[2], st.time[2]);
  st.state[3] = x + h * st.slope[2];
  st.time[3] = t + h;
  st.slope[3] = field(st.state[3], st.time[3]);
  return st;
}

Vector Advance(const Stages& st, const Vector& x, double h, Scheme scheme) {
  if (scheme == Scheme::kEuler) return x + h * st.slope[0];
  return x + (h / 6.0) * (st.slope[0] + 2.0 * st.slope[1] +
                          2.0 * st.slope[2] + st.slope[3]);
}

Vector ReverseStep(const Stages& st, const Vector& out_adjoint,
                   const StateJacobian& jacobian, double h, Scheme scheme,
                   std::array<Vector, 4>& slope_adjoint) {
  if (scheme == Scheme::kEuler) {
    slope_adjoint[0] = h * out_adjoint;
    return out_adjoint +
           jacobian(st.state[0], st.time[0]).transpose() * slope_adjoint[0];
  }
  // y2 = x + h/2 k1, y3 = x + h/2 k2, y4 = x + h k3.
  Vector in_adjoint = out_adjoint;
  slope_adjoint[3] = (h / 6.0) * out_adjoint;
  Vector g = jacobian(st.state[3], st.time[3]).transpose() * slope_adjoint[3];
  in_adjoint += g;
  slope_adjoint[2] = (h / 3.0) * out_adjoint + h * g;
  g = jacobian(st.state[2], st.time[2]).transpose() * slope_adjoint[2];
  in_adjoint += g;
  slope_adjoint[1] = (h / 3.0) * out_adjoint + 0.5 * h * g;
  g = jacobian(st.state[1], st.time[1]).transpose() * slope_adjoint[1];
  in_adjoint += g;
  slope_adjoint[0] = (h / 6.0) * out_adjoint + 0.5 * h * g;
  g = jacobian(st.state[0], st.time[0]).transpose() * slope_adjoint[0];
  in_adjoint += g;
  return in_adjoint;
}

Trajectory Run(const AutonomousField& field, const Vector& x0,
               const TimeGrid& grid, Scheme scheme) {
  Trajectory traj{grid, Matrix(grid.num_points(), x0.size()), scheme};
  Vector x = x0;
  traj.values.row(0) = x.transpose();
  const double h = grid.step();
  for (int k = 0; k + 1 < grid.num_points(); ++k) {
    Stages st =
        ComputeStages(field, x, grid.Time(k), h, scheme);
    x = Advance(st, x, h, scheme);
    if (!x.allFinite()) {
      throw Error(ErrorCode::kIntegrationDiverged,
                  "non-finite state at knot " + std::to_string(k + 1), k + 1);
    }
    traj.values.row(k + 1) = x.transpose();
  }
  return traj;
}

}  // namespace cdsopt::internal
