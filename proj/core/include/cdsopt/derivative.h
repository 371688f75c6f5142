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

// Derivatives of the trajectory payoff with respect to the binary decision.
//
// The standard derivative relaxes alpha into [0,1]^m and differentiates.
// The nonstandard derivative instead varies the vector field along the
// convex combination (1 - eps) f(., base) + eps f(., base +/- e_i), so it
// only ever evaluates f and r at binary points. Both share one forward and
// one adjoint solve; each entry then costs one pass over the stored stages.

#ifndef CDSOPT_DERIVATIVE_H_
#define CDSOPT_DERIVATIVE_H_

#include <string_view>

#include "cdsopt/adjoint.h"
#include "cdsopt/sysmodel.h"

namespace cdsopt {

enum class DerivativeKind { kStandard, kNonstandard };

std::string_view DerivativeKindName(DerivativeKind kind);
DerivativeKind ParseDerivativeKind(std::string_view name);

struct Gradient {
  DerivativeKind kind = DerivativeKind::kStandard;
  BinaryVector base_point;
  Vector entries;
  // Payoff at base_point, kept so certificates need no re-integration.
  double base_payoff = 0.0;
};

// Forward and adjoint solves at a binary base point.
struct Linearization {
  BinaryVector base_point;
  Trajectory forward;
  AdjointTrajectory adjoint;
  double payoff = 0.0;
};

Linearization Linearize(const SystemSpec& spec, const BinaryVector& alpha_bar,
                        const TimeGrid& grid, Scheme scheme = Scheme::kEuler);

// Throws kNotRelaxable if spec.relaxable is false. When jac_f_alpha or
// jac_r_alpha is missing, the alpha-Jacobian is replaced by central
// differences with step 1e-5 evaluated at the stored stages (one-sided
// second-order differences where the central stencil would leave [0,1]).
Gradient StandardDerivative(const SystemSpec& spec, const Linearization& lin);
Gradient StandardDerivative(const SystemSpec& spec,
                            const BinaryVector& alpha_bar,
                            const TimeGrid& grid,
                            Scheme scheme = Scheme::kEuler);

// Entry i uses f(x, base + e_i) - f(x, base) when base_i = 0 and
// f(x, base) - f(x, base - e_i) when base_i = 1, with matching differences
// of r, weighted by the costate.
Gradient NonstandardDerivative(const SystemSpec& spec,
                               const Linearization& lin);
Gradient NonstandardDerivative(const SystemSpec& spec,
                               const BinaryVector& alpha_bar,
                               const TimeGrid& grid,
                               Scheme scheme = Scheme::kEuler);

Gradient ComputeDerivative(DerivativeKind kind, const SystemSpec& spec,
                           const Linearization& lin);

// Derivative at eps = 0+ of the eps-variational payoff associated with
// (base, dir), for an arbitrary binary dir:
//   integral of (f(x, dir) - f(x, base))^T lambda + r(x, dir) - r(x, base).
double VariationalDirectionalDerivative(const SystemSpec& spec,
                                        const Linearization& lin,
                                        const BinaryVector& dir);

// Affine-in-alpha surrogate built from evaluations at 0 and the unit
// vectors: f^(x, a) = f(x, 0) + sum_i a_i (f(x, e_i) - f(x, 0)), same for r.
// The result is relaxable and carries exact alpha-Jacobians.
SystemSpec Reformulate(const SystemSpec& spec);

// Central difference [J(base + h e_i) - J(base - h e_i)] / (2h) of the
// relaxed payoff. The stencil may leave [0,1]; the spec's contracts must
// accept that. Throws kNotRelaxable for non-relaxable specs.
double FiniteDifferenceStandard(const SystemSpec& spec,
                                const BinaryVector& alpha_bar, int index,
                                double h_fd, const TimeGrid& grid,
                                Scheme scheme = Scheme::kEuler);

// One-sided quotient of the eps-variational payoff in direction
// base +/- e_i, negated when base_i = 1. eps must lie in (0, 1].
double FiniteDifferenceNonstandard(const SystemSpec& spec,
                                   const BinaryVector& alpha_bar, int index,
                                   double eps, const TimeGrid& grid,
                                   Scheme scheme = Scheme::kEuler);

}  // namespace cdsopt

#endif  // CDSOPT_DERIVATIVE_H_
