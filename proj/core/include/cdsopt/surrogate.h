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


// Exact quadratic pseudo-Boolean model of a payoff, fitted from the
// 1 + m + m(m-1)/2 evaluations at 0, e_i and e_i + e_j. When the dynamics
// are affine in (x, alpha) and the payoffs are quadratic in x (the ETP
// benchmark), the discrete payoff is such a polynomial, and enumeration over
// 2^m points no longer needs 2^m integrations.

#ifndef CDSOPT_SURROGATE_H_
#define CDSOPT_SURROGATE_H_

#include <cstdint>

#include "cdsopt/combisolve.h"
#include "cdsopt/sysmodel.h"

namespace cdsopt {

class QuadraticSurrogate {
 public:
  // Evaluations run in parallel; `payoff` must be thread-safe.
  static QuadraticSurrogate Fit(const SetObjective& payoff, int m);

  int size() const { return static_cast<int>(linear_.size()); }
  double operator()(const BinaryVector& alpha) const;

  // Largest |model - payoff| / (1 + |payoff|) over `samples` uniformly
  // random binary points.
  double ValidationError(const SetObjective& payoff, int samples,
                         std::uint64_t seed) const;

 private:
  double constant_ = 0.0;
  Vector linear_;
  Matrix pair_;  // strictly upper triangular
};

struct PayoffOracle {
  SetObjective payoff;
  bool quadratic = false;
};

// Returns the fitted surrogate when it reproduces the integrated payoff to
// 1e-9 (relative) on 64 random points, and direct integration otherwise.
PayoffOracle MakePayoffOracle(const SystemSpec& spec, const TimeGrid& grid,
                              Scheme scheme, std::uint64_t seed = 1);

}  // namespace cdsopt

#endif  // CDSOPT_SURROGATE_H_
