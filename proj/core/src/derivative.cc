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

#include "cdsopt/derivative.h"

#include <cmath>
#include <string>
#include <vector>

#include "cdsopt/error.h"
#include "stepper.h"

namespace cdsopt {

std::string_view DerivativeKindName(DerivativeKind kind) {
  return kind == DerivativeKind::kStandard ? "standard" : "nonstandard";
}

DerivativeKind ParseDerivativeKind(std::string_view name) {
  if (name == "standard") return DerivativeKind::kStandard;
  if (name == "nonstandard") return DerivativeKind::kNonstandard;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown derivative kind '" + std::string(name) + "'");
}

Linearization Linearize(const SystemSpec& spec, const BinaryVector& alpha_bar,
                        const TimeGrid& grid, Scheme scheme) {
  if (alpha_bar.size() != spec.decision_dim) {
    throw Error(ErrorCode::kDimension, "base point has wrong size");
  }
  const Vector a = alpha_bar.ToReal();
  Trajectory forward = Integrate(spec, a, grid, scheme);
  AdjointTrajectory adjoint = SolveAdjoint(spec, a, forward);
  const double payoff = EvaluatePayoff(spec, forward, a);
  return {alpha_bar, std::move(forward), std::move(adjoint), payoff};
}

namespace {

constexpr double kJacobianStep = 1e-5;

// Second-order difference of g along coordinate i of alpha, staying inside
// [0,1] when possible.
template <typename Fn>
auto AlphaDifference(const Fn& g, const Vector& alpha, int i) {
  const double d = kJacobianStep;
  Vector p = alpha;
  if (alpha[i] - d >= 0.0 && alpha[i] + d <= 1.0) {
    p[i] = alpha[i] + d;
    auto hi = g(p);
    p[i] = alpha[i] - d;
    auto lo = g(p);
    return decltype(hi)((hi - lo) / (2.0 * d));
  }
  const double s = alpha[i] + d <= 1.0 ? 1.0 : -1.0;
  auto f0 = g(alpha);
  p[i] = alpha[i] + s * d;
  auto f1 = g(p);
  p[i] = alpha[i] + 2.0 * s * d;
  auto f2 = g(p);
  return decltype(f0)(s * (-3.0 * f0 + 4.0 * f1 - f2) / (2.0 * d));
}

Matrix FieldAlphaJacobian(const SystemSpec& spec, const Vector& x,
                          const Vector& alpha, double t) {
  if (spec.jac_f_alpha) return spec.jac_f_alpha(x, alpha, t);
  Matrix jac(spec.state_dim, spec.decision_dim);
  for (int i = 0; i < spec.decision_dim; ++i) {
    jac.col(i) = AlphaDifference(
        [&](const Vector& a) -> Vector { return spec.vector_field(x, a, t); },
        alpha, i);
  }
  return jac;
}

Vector RunningAlphaGradient(const SystemSpec& spec, const Vector& x,
                            const Vector& alpha, double t) {
  if (spec.jac_r_alpha) return spec.jac_r_alpha(x, alpha, t);
  Vector grad(spec.decision_dim);
  for (int i = 0; i < spec.decision_dim; ++i) {
    grad[i] = AlphaDifference(
        [&](const Vector& a) { return spec.running_payoff(x, a, t); }, alpha,
        i);
  }
  return grad;
}

void CheckLinearization(const SystemSpec& spec, const Linearization& lin) {
  if (lin.base_point.size() != spec.decision_dim ||
      lin.forward.values.cols() != spec.state_dim) {
    throw Error(ErrorCode::kDimension, "linearization does not fit the spec");
  }
}

// Sensitivity of the discrete payoff to a perturbation of f and r along a
// direction given as field/running-payoff differences at each point.
template <typename FieldDelta, typename RunningDelta>
double DirectionalSensitivity(const Linearization& lin,
                              const FieldDelta& field_delta,
                              const RunningDelta& running_delta) {
  const TimeGrid& grid = lin.forward.grid;
  const AdjointTrajectory& adj = lin.adjoint;
  double total = 0.0;
  for (int k = 0; k < grid.num_points(); ++k) {
    total += grid.Weight(k) * running_delta(lin.forward.State(k), grid.Time(k));
  }
  for (int k = 0; k + 1 < grid.num_points(); ++k) {
    for (int s = 0; s < adj.stage_count; ++s) {
      const StageRecord& rec = adj.Stage(k, s);
      total += field_delta(rec.state, rec.time).dot(rec.weight);
    }
  }
  return total;
}

}  // namespace

Gradient StandardDerivative(const SystemSpec& spec, const Linearization& lin) {
  if (!spec.relaxable) {
    throw Error(ErrorCode::kNotRelaxable,
                "standard derivative requires a relaxable system");
  }
  CheckLinearization(spec, lin);
  const Vector a = lin.base_point.ToReal();
  const TimeGrid& grid = lin.forward.grid;
  const AdjointTrajectory& adj = lin.adjoint;

  Vector entries = Vector::Zero(spec.decision_dim);
  for (int k = 0; k < grid.num_points(); ++k) {
    entries += grid.Weight(k) *
               RunningAlphaGradient(spec, lin.forward.State(k), a,
                                    grid.Time(k));
  }
  for (int k = 0; k + 1 < grid.num_points(); ++k) {
    for (int s = 0; s < adj.stage_count; ++s) {
      const StageRecord& rec = adj.Stage(k, s);
      entries +=
          FieldAlphaJacobian(spec, rec.state, a, rec.time).transpose() *
          rec.weight;
    }
  }
  if (!entries.allFinite()) {
    throw Error(ErrorCode::kAdjointDiverged, "non-finite standard derivative");
  }
  return {DerivativeKind::kStandard, lin.base_point, std::move(entries),
          lin.payoff};
}

Gradient StandardDerivative(const SystemSpec& spec,
                            const BinaryVector& alpha_bar,
                            const TimeGrid& grid, Scheme scheme) {
  if (!spec.relaxable) {
    throw Error(ErrorCode::kNotRelaxable,
                "standard derivative requires a relaxable system");
  }
  return StandardDerivative(spec, Linearize(spec, alpha_bar, grid, scheme));
}

Gradient NonstandardDerivative(const SystemSpec& spec,
                               const Linearization& lin) {
  CheckLinearization(spec, lin);
  const int m = spec.decision_dim;
  const Vector base = lin.base_point.ToReal();
  const TimeGrid& grid = lin.forward.grid;
  const AdjointTrajectory& adj = lin.adjoint;

  // Direction i flips entry i; the difference is taken "upward" so a base
  // entry of 1 contributes f(base) - f(base - e_i).
  std::vector<Vector> flipped(m, base);
  std::vector<double> sign(m);
  for (int i = 0; i < m; ++i) {
    flipped[i][i] = 1.0 - base[i];
    sign[i] = base[i] == 0.0 ? 1.0 : -1.0;
  }

  Vector entries = Vector::Zero(m);
  for (int k = 0; k < grid.num_points(); ++k) {
    const Vector x = lin.forward.State(k);
    const double t = grid.Time(k);
    const double r0 = spec.running_payoff(x, base, t);
    for (int i = 0; i < m; ++i) {
      entries[i] += grid.Weight(k) * sign[i] *
                    (spec.running_payoff(x, flipped[i], t) - r0);
    }
  }
  for (int k = 0; k + 1 < grid.num_points(); ++k) {
    for (int s = 0; s < adj.stage_count; ++s) {
      const StageRecord& rec = adj.Stage(k, s);
      const Vector f0 = spec.vector_field(rec.state, base, rec.time);
      for (int i = 0; i < m; ++i) {
        entries[i] +=
            sign[i] *
            (spec.vector_field(rec.state, flipped[i], rec.time) - f0)
                .dot(rec.weight);
      }
    }
  }
  if (!entries.allFinite()) {
    throw Error(ErrorCode::kAdjointDiverged,
                "non-finite nonstandard derivative");
  }
  return {DerivativeKind::kNonstandard, lin.base_point, std::move(entries),
          lin.payoff};
}

Gradient NonstandardDerivative(const SystemSpec& spec,
                               const BinaryVector& alpha_bar,
                               const TimeGrid& grid, Scheme scheme) {
  return NonstandardDerivative(spec, Linearize(spec, alpha_bar, grid, scheme));
}

Gradient ComputeDerivative(DerivativeKind kind, const SystemSpec& spec,
                           const Linearization& lin) {
  return kind == DerivativeKind::kStandard ? StandardDerivative(spec, lin)
                                           : NonstandardDerivative(spec, lin);
}

double VariationalDirectionalDerivative(const SystemSpec& spec,
                                        const Linearization& lin,
                                        const BinaryVector& dir) {
  CheckLinearization(spec, lin);
  if (dir.size() != spec.decision_dim) {
    throw Error(ErrorCode::kDimension, "direction has wrong size");
  }
  const Vector base = lin.base_point.ToReal();
  const Vector target = dir.ToReal();
  return DirectionalSensitivity(
      lin,
      [&](const Vector& x, double t) -> Vector {
        return spec.vector_field(x, target, t) - spec.vector_field(x, base, t);
      },
      [&](const Vector& x, double t) {
        return spec.running_payoff(x, target, t) -
               spec.running_payoff(x, base, t);
      });
}

SystemSpec Reformulate(const SystemSpec& spec) {
  spec.Validate();
  const int m = spec.decision_dim;
  const Vector zero = Vector::Zero(m);
  std::vector<Vector> units(m, zero);
  for (int i = 0; i < m; ++i) units[i][i] = 1.0;

  // The lambdas below hold their own copy of the original contracts.
  SystemSpec out = spec;
  out.relaxable = true;
  out.vector_field = [spec, zero, units](const Vector& x, const Vector& a,
                                         double t) -> Vector {
    const Vector f0 = spec.vector_field(x, zero, t);
    Vector f = f0;
    for (std::size_t i = 0; i < units.size(); ++i) {
      if (a[i] != 0.0) f += a[i] * (spec.vector_field(x, units[i], t) - f0);
    }
    return f;
  };
  out.running_payoff = [spec, zero, units](const Vector& x, const Vector& a,
                                           double t) {
    const double r0 = spec.running_payoff(x, zero, t);
    double r = r0;
    for (std::size_t i = 0; i < units.size(); ++i) {
      if (a[i] != 0.0) r += a[i] * (spec.running_payoff(x, units[i], t) - r0);
    }
    return r;
  };
  out.jac_f_x = [spec, zero, units](const Vector& x, const Vector& a,
                                    double t) -> Matrix {
    const Matrix j0 = spec.jac_f_x(x, zero, t);
    Matrix j = j0;
    for (std::size_t i = 0; i < units.size(); ++i) {
      if (a[i] != 0.0) j += a[i] * (spec.jac_f_x(x, units[i], t) - j0);
    }
    return j;
  };
  out.jac_r_x = [spec, zero, units](const Vector& x, const Vector& a,
                                    double t) -> Vector {
    const Vector g0 = spec.jac_r_x(x, zero, t);
    Vector g = g0;
    for (std::size_t i = 0; i < units.size(); ++i) {
      if (a[i] != 0.0) g += a[i] * (spec.jac_r_x(x, units[i], t) - g0);
    }
    return g;
  };
  out.jac_f_alpha = [spec, zero, units](const Vector& x, const Vector&,
                                        double t) -> Matrix {
    const Vector f0 = spec.vector_field(x, zero, t);
    Matrix j(spec.state_dim, spec.decision_dim);
    for (std::size_t i = 0; i < units.size(); ++i) {
      j.col(i) = spec.vector_field(x, units[i], t) - f0;
    }
    return j;
  };
  out.jac_r_alpha = [spec, zero, units](const Vector& x, const Vector&,
                                        double t) -> Vector {
    const double r0 = spec.running_payoff(x, zero, t);
    Vector g(spec.decision_dim);
    for (std::size_t i = 0; i < units.size(); ++i) {
      g[i] = spec.running_payoff(x, units[i], t) - r0;
    }
    return g;
  };
  return out;
}

double FiniteDifferenceStandard(const SystemSpec& spec,
                                const BinaryVector& alpha_bar, int index,
                                double h_fd, const TimeGrid& grid,
                                Scheme scheme) {
  if (!spec.relaxable) {
    throw Error(ErrorCode::kNotRelaxable,
                "finite-difference standard derivative requires a relaxable "
                "system");
  }
  if (index < 0 || index >= spec.decision_dim || !(h_fd > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "bad finite-difference request");
  }
  Vector a = alpha_bar.ToReal();
  a[index] += h_fd;
  const double hi = internal::PayoffUnchecked(spec, a, grid, scheme);
  a[index] -= 2.0 * h_fd;
  const double lo = internal::PayoffUnchecked(spec, a, grid, scheme);
  return (hi - lo) / (2.0 * h_fd);
}

double FiniteDifferenceNonstandard(const SystemSpec& spec,
                                   const BinaryVector& alpha_bar, int index,
                                   double eps, const TimeGrid& grid,
                                   Scheme scheme) {
  if (index < 0 || index >= spec.decision_dim) {
    throw Error(ErrorCode::kInvalidArgument, "index out of range");
  }
  if (!(eps > 0.0 && eps <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "eps must lie in (0,1]");
  }
  const BinaryVector dir = alpha_bar.Flipped(index);
  const double base = Payoff(spec, alpha_bar, grid, scheme);
  const Trajectory varied =
      IntegrateVariational(spec, alpha_bar, dir, eps, grid, scheme);
  const double moved =
      EvaluateVariationalPayoff(spec, varied, alpha_bar, dir, eps);
  return alpha_bar[index] ? (base - moved) / eps : (moved - base) / eps;
}

}  // namespace cdsopt
