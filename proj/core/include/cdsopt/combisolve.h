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


// Solvers for the linearized 0-1 program
//   maximize g^T alpha  subject to  alpha in C,  alpha in {0,1}^m
// together with exact (brute force) and greedy baselines on arbitrary
// objectives. None of the linear solvers touches the dynamical system.

#ifndef CDSOPT_COMBISOLVE_H_
#define CDSOPT_COMBISOLVE_H_

#include <functional>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "cdsopt/derivative.h"
#include "cdsopt/sysmodel.h"

namespace cdsopt {

using IntMatrix = Eigen::MatrixXi;
using IntVector = Eigen::VectorXi;

// k_min <= |alpha|_0 <= k_max.
struct L0Band {
  int k_min = 0;
  int k_max = 0;
};

// Q alpha <= r with Q totally unimodular.
struct TuConstraint {
  IntMatrix q;
  IntVector r;
};

// weights^T alpha <= capacity with nonnegative weights.
struct KnapsackConstraint {
  Vector weights;
  double capacity = 0.0;
};

// alpha must be one of the listed vectors.
struct ExplicitSet {
  std::vector<BinaryVector> admissible;
};

using ConstraintSet =
    std::variant<L0Band, TuConstraint, KnapsackConstraint, ExplicitSet>;

// Throws kConstraint if the constraint data is malformed for dimension m.
void ValidateConstraints(const ConstraintSet& constraints, int m);

bool IsFeasible(const ConstraintSet& constraints, const BinaryVector& alpha);

// True iff every square submatrix has determinant in {-1, 0, 1}.
// Exhaustive; intended for small matrices.
bool IsTotallyUnimodular(const IntMatrix& q);

// Algorithm 1: the k_min largest entries are switched on, then further
// entries up to rank k_max while they are strictly positive. Ties are
// broken toward the lower index. Throws kConstraint unless
// 0 <= k_min <= k_max <= m.
BinaryVector SolveL0(const Vector& entries, int k_min, int k_max);
BinaryVector SolveL0(const Gradient& grad, int k_min, int k_max);

// Solves the LP relaxation over the box and snaps the optimal vertex.
// Q is checked exhaustively when it has at most 8 rows and 8 columns.
// Throws kInfeasible for an infeasible relaxation and kTuViolation if Q is
// found not to be TU or the vertex is not within 1e-7 of {0,1}^m.
BinaryVector SolveTu(const Vector& entries, const IntMatrix& q,
                     const IntVector& r);
BinaryVector SolveTu(const Gradient& grad, const IntMatrix& q,
                     const IntVector& r);

// Greedy on value/weight ratios after fixing non-positive entries to 0,
// compared against the best single item; at least half the optimum.
// Throws kConstraint on negative capacity or weights.
BinaryVector SolveKnapsack(const Vector& entries, const Vector& weights,
                           double capacity);
BinaryVector SolveKnapsack(const Gradient& grad, const Vector& weights,
                           double capacity);

// Dispatches on the constraint type. Explicit sets are scanned.
BinaryVector SolveLinearized(const Vector& entries,
                             const ConstraintSet& constraints);

// Guaranteed fraction of the linear optimum achieved by SolveLinearized:
// 0.5 for knapsack constraints, 1 otherwise.
double SolverRatio(const ConstraintSet& constraints);

using SetObjective = std::function<double(const BinaryVector&)>;

struct BruteForceResult {
  BinaryVector alpha;
  double value = 0.0;
  long long evaluated = 0;
};

inline constexpr int kMaxEnumerationDim = 24;

// Exact maximizer over the feasible set; ties go to the lexicographically
// smallest vector. The objective must be safe to call concurrently.
// Throws kEnumerationRefused for m > 24 and kInfeasible if nothing is
// feasible.
BruteForceResult SolveBruteForce(const SetObjective& objective,
                                 const ConstraintSet& constraints, int m);

// Starting from all-zeros, repeatedly switches on the entry with the
// largest payoff increment among those keeping the vector feasible. Lower
// band requirements (k_min, covering rows) are met first even at a loss;
// afterwards only strictly positive increments are accepted.
BinaryVector SolveGreedy(const SetObjective& objective,
                         const ConstraintSet& constraints, int m);

}  // namespace cdsopt

#endif  // CDSOPT_COMBISOLVE_H_
