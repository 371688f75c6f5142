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

#include "cdsopt/adjoint.h"

#include <cmath>
#include <string>

#include "cdsopt/error.h"
#include "stepper.h"

namespace cdsopt {

double Hamiltonian(const SystemSpec& spec, const Vector& state,
                   const Vector& costate, const Vector& alpha, double t) {
  if (state.size() != spec.state_dim || costate.size() != spec.state_dim ||
      alpha.size() != spec.decision_dim) {
    throw Error(ErrorCode::kDimension, "Hamiltonian argument sizes");
  }
  return costate.dot(spec.vector_field(state, alpha, t)) +
         spec.running_payoff(state, alpha, t);
}

AdjointTrajectory SolveAdjoint(const SystemSpec& spec, const Vector& alpha,
                               const Trajectory& forward) {
  const TimeGrid& grid = forward.grid;
  const int n = spec.state_dim;
  const int last = grid.num_points() - 1;
  if (forward.values.cols() != n || forward.values.rows() != last + 1 ||
      alpha.size() != spec.decision_dim ||
      std::abs(grid.horizon() - spec.horizon) >
          1e-12 * std::max(1.0, spec.horizon)) {
    throw Error(ErrorCode::kDimension,
                "forward trajectory does not match the spec");
  }
  const double h = grid.step();
  const Scheme scheme = forward.scheme;

  AdjointTrajectory adj{grid, scheme, Matrix(), Matrix(), {}, 1};
  adj.stage_count = internal::StageCount(scheme);
  adj.values.resize(last + 1, n);
  adj.multipliers.resize(last + 1, n);
  adj.stages.resize(static_cast<std::size_t>(last) * adj.stage_count);

  auto field = [&](const Vector& x, double t) {
    return spec.vector_field(x, alpha, t);
  };
  auto jac = [&](const Vector& x, double t) {
    return spec.jac_f_x(x, alpha, t);
  };

  auto check = [&](const Vector& v, int k) {
    if (!v.allFinite()) {
      throw Error(ErrorCode::kAdjointDiverged,
                  "non-finite costate at knot " + std::to_string(k), k);
    }
  };

  Vector x_last = forward.State(last);
  Vector rx_last = spec.jac_r_x(x_last, alpha, grid.Time(last));
  Vector mu = spec.jac_q_x(x_last) + grid.Weight(last) * rx_last;
  check(mu, last);
  adj.multipliers.row(last) = mu.transpose();
  adj.values.row(last) = spec.jac_q_x(x_last).transpose();

  std::array<Vector, 4> slope_adjoint;
  for (int k = last - 1; k >= 0; --k) {
    const Vector x = forward.State(k);
    const double t = grid.Time(k);
    internal::Stages st = internal::ComputeStages(field, x, t, h, scheme);
    Vector propagated =
        internal::ReverseStep(st, mu, jac, h, scheme, slope_adjoint);
    for (int s = 0; s < adj.stage_count; ++s) {
      StageRecord& rec =
          adj.stages[static_cast<std::size_t>(k) * adj.stage_count + s];
      rec.state = st.state[s];
      rec.time = st.time[s];
      rec.weight = slope_adjoint[s];
    }
    const Vector rx = spec.jac_r_x(x, alpha, t);
    mu = propagated + grid.Weight(k) * rx;
    check(mu, k);
    adj.multipliers.row(k) = mu.transpose();
    if (k == 0) {
      adj.values.row(k) = mu.transpose();
    } else {
      adj.values.row(k) = (mu - 0.5 * h * rx).transpose();
    }
  }
  return adj;
}

AdjointTrajectory SolveAdjoint(const SystemSpec& spec,
                               const BinaryVector& alpha,
                               const Trajectory& forward) {
  return SolveAdjoint(spec, alpha.ToReal(), forward);
}

}  // namespace cdsopt
