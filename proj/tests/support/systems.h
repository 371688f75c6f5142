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


// Small analytic and random systems shared by the unit and acceptance tests.

#ifndef CDSOPT_TESTS_SUPPORT_SYSTEMS_H_
#define CDSOPT_TESTS_SUPPORT_SYSTEMS_H_

#include <cstdint>
#include <random>

#include "cdsopt/combisolve.h"
#include "cdsopt/sysmodel.h"

namespace cdsopt::testing {

// n = m = 1: x' = x + alpha_gain * a_1, r = r_weight * x, q = q_weight * x.
SystemSpec ScalarLinear(double x0, double alpha_gain, double r_weight,
                        double q_weight, double horizon = 1.0);

// f = x + a_1^3 + 2 a_2, r = x^2, q = 0, x(0) = x0, T = 1.
SystemSpec BiasSystem(double x0 = 1.0, bool with_alpha_jacobians = true);

// f = x + sum_i exp(-a_i), r = x, q = 0, x(0) = 0, T = 1.
SystemSpec ExampleTwoSystem(int m);

// f = (x_1 + a_1 + 2, x_2 + a_2), r = sign * (x_1 - x_2)^2, x(0) = 0, T = 1.
SystemSpec CoupledPairSystem(double sign);

// Polynomial f and r in (x, alpha), n <= 4, m <= 6. Every other system omits
// the alpha-Jacobians so the finite-difference fallback is exercised.
SystemSpec RandomPolynomialSystem(std::mt19937_64& rng, int n, int m,
                                  bool with_alpha_jacobians);

// f and r take arbitrary values per binary alpha (table lookup on the
// mask); relaxable = false.
SystemSpec RandomTableSystem(std::mt19937_64& rng, int n, int m);

// Additive but not affine in alpha: every a_i enters f and r through its
// own exponential, cosine or power term.
SystemSpec RandomAdditiveSystem(std::mt19937_64& rng, int n, int m);

// Affine field x' = A x + B a + c with concave quadratic r and q.
SystemSpec RandomConcaveSystem(std::mt19937_64& rng, int n, int m);

double Uniform(std::mt19937_64& rng, double lo, double hi);
BinaryVector RandomBinary(std::mt19937_64& rng, int m);

// A random l0 band, interval-TU system or knapsack that `feasible` meets.
ConstraintSet RandomConstraints(std::mt19937_64& rng, int m,
                                const BinaryVector& feasible);

// Consecutive-ones rows with lower and upper bounds, stacked as [Q; -Q].
TuConstraint RandomIntervalTu(std::mt19937_64& rng, int m,
                              const BinaryVector& feasible);

// Maximum of entries^T alpha over the feasible set, by enumeration.
double LinearOptimum(const Vector& entries, const ConstraintSet& constraints,
                     int m);

}  // namespace cdsopt::testing

#endif  // CDSOPT_TESTS_SUPPORT_SYSTEMS_H_
