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


// A posteriori suboptimality certificates and exhaustive structural checks
// (concavity inequality, submodularity, monotonicity) for small m.
//
// Payoffs are normalized by the base payoff J(alpha_bar), which the
// Gradient carries; the spec itself is never modified.

#ifndef CDSOPT_BOUNDS_H_
#define CDSOPT_BOUNDS_H_

#include <functional>
#include <optional>

#include "cdsopt/combisolve.h"
#include "cdsopt/derivative.h"
#include "cdsopt/sysmodel.h"

namespace cdsopt {

inline constexpr double kDenominatorTol = 1e-12;

struct CertifiedSolution {
  BinaryVector alpha_star;
  DerivativeKind kind = DerivativeKind::kStandard;
  double payoff = 0.0;       // J(alpha_star)
  double base_payoff = 0.0;  // J(alpha_bar)
  double denominator = 0.0;  // g^T alpha_star / ratio - g^T alpha_bar
  // Set when the denominator vanishes: alpha_bar is certified optimal.
  bool optimal = false;
  double rho = 0.0;       // meaningful only when !optimal
  double rho_post = 0.0;  // max(rho, 0), or 1 when optimal
  BinaryVector alpha_post;
  double post_payoff = 0.0;  // J(alpha_post) = max(J(alpha_star), J(bar))

  double NormalizedPayoff() const { return payoff - base_payoff; }
  double NormalizedPostPayoff() const { return post_payoff - base_payoff; }
};

// Certificate for `alpha_star` from the linearization at `grad.base_point`.
// `solver_ratio` is the guaranteed fraction of the linear optimum reached by
// the solver that produced alpha_star (1 for exact solvers, 0.5 for the
// knapsack greedy); the denominator is inflated accordingly so the bound
// stays valid. When `base_feasible` is false alpha_bar cannot be returned
// and alpha_post = alpha_star.
CertifiedSolution Certify(const SystemSpec& spec, const BinaryVector& alpha_bar,
                          const Gradient& grad,
                          const BinaryVector& alpha_star, const TimeGrid& grid,
                          Scheme scheme = Scheme::kEuler,
                          double solver_ratio = 1.0,
                          bool base_feasible = true);

// Same bookkeeping with J(alpha_star) supplied by the caller.
CertifiedSolution CertifyWithPayoff(const Gradient& grad,
                                    const BinaryVector& alpha_star,
                                    double payoff_star,
                                    double solver_ratio = 1.0,
                                    bool base_feasible = true);

struct ConcavityReport {
  bool holds = true;
  // Largest J(alpha) - J(bar) - g^T(alpha - bar) found, and where.
  double worst_violation = 0.0;
  BinaryVector worst;
  long long checked = 0;
};

inline constexpr int kMaxConcavityDim = 20;
inline constexpr int kMaxSetCheckDim = 14;

// g^T(alpha - bar) >= J(alpha) - J(bar) at every binary alpha, within
// 1e-7 * (1 + |J(alpha)|). Throws kEnumerationRefused for m > 20.
ConcavityReport CheckConcavityInequality(const SystemSpec& spec,
                                         const BinaryVector& alpha_bar,
                                         const Gradient& grad,
                                         const TimeGrid& grid,
                                         Scheme scheme = Scheme::kEuler);
ConcavityReport CheckConcavityInequality(const SetObjective& payoff,
                                         const Gradient& grad);

struct SetFunctionReport {
  bool holds = true;
  double worst_violation = 0.0;
  // Witness: base set X and the added elements.
  BinaryVector witness;
  int first = -1;
  int second = -1;
};

// J(X + s) - J(X) >= J(Y + s) - J(Y) for all X in Y, s not in Y, checked
// through the equivalent pairwise second differences
// J(X + s + t) - J(X + s) - J(X + t) + J(X) <= tol. Throws
// kEnumerationRefused for m > 14.
SetFunctionReport CheckSubmodular(const SetObjective& payoff, int m);

// J(X) <= J(X + s) for all X and s not in X. Throws kEnumerationRefused for
// m > 14.
SetFunctionReport CheckMonotone(const SetObjective& payoff, int m);

// Evaluates `payoff` at every mask in [0, 2^m), in parallel.
std::vector<double> EvaluateAll(const SetObjective& payoff, int m);

}  // namespace cdsopt

#endif  // CDSOPT_BOUNDS_H_
