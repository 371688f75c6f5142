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


// Dense bounded-variable primal simplex for
//   maximize c^T x  subject to  A x <= b,  0 <= x <= 1.
// Bland's rule is used for both the entering and the leaving variable, so
// the method terminates on degenerate problems.

#ifndef CDSOPT_SIMPLEX_H_
#define CDSOPT_SIMPLEX_H_

#include "cdsopt/sysmodel.h"

namespace cdsopt {

struct LpProblem {
  Vector objective;  // length m
  Matrix rows;       // l x m
  Vector rhs;        // length l

  // Throws kDimension if the sizes disagree.
  void Validate() const;
};

struct LpSolution {
  Vector x;
  double objective = 0.0;
  int iterations = 0;
};

// Returns an optimal vertex. Throws kInfeasible if no point of the box
// satisfies the rows.
LpSolution SolveBoxLp(const LpProblem& problem);

}  // namespace cdsopt

#endif  // CDSOPT_SIMPLEX_H_
