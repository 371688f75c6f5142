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

// Combinatorial dynamical systems: an ODE x' = f(x, alpha, t) whose field is
// parameterized by a binary vector alpha held constant over [0, T], together
// with a running payoff r and a terminal payoff q.
//
// Integration uses explicit fixed-step schemes on a uniform grid; payoffs use
// the trapezoid rule on the same grid. Everything here is pure.

#ifndef CDSOPT_SYSMODEL_H_
#define CDSOPT_SYSMODEL_H_

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace cdsopt {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// A point of {0,1}^m. Ordering is lexicographic on the entries.
class BinaryVector {
 public:
  BinaryVector() = default;
  // All-zeros vector of the given size.
  explicit BinaryVector(int size);
  // Throws kInvalidArgument unless every entry is 0 or 1.
  explicit BinaryVector(std::vector<std::uint8_t> bits);

  // Bit i of `mask` becomes entry i. Requires size <= 64.
  static BinaryVector FromMask(std::uint64_t mask, int size);
  static BinaryVector Ones(int size);
  static BinaryVector Unit(int size, int index);
  // Rounds a real vector whose entries are all within `tol` of 0 or 1;
  // throws kInvalidArgument otherwise.
  static BinaryVector FromReal(const Vector& values, double tol = 1e-9);
  // Parses a string of '0'/'1' characters.
  static BinaryVector Parse(std::string_view text);

  int size() const { return static_cast<int>(bits_.size()); }
  bool operator[](int i) const { return bits_[i] != 0; }
  void Set(int i, bool value) { bits_[i] = value ? 1 : 0; }
  BinaryVector Flipped(int i) const;

  int Count() const;
  std::uint64_t Mask() const;
  Vector ToReal() const;
  std::string ToString() const;
  std::span<const std::uint8_t> bits() const { return bits_; }

  friend bool operator==(const BinaryVector&, const BinaryVector&) = default;
  friend auto operator<=>(const BinaryVector&, const BinaryVector&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

enum class Scheme { kEuler, kRk4 };

std::string_view SchemeName(Scheme scheme);
Scheme ParseScheme(std::string_view name);

// Contracts defining a combinatorial dynamical system. All callables must be
// pure. Row-vector Jacobians (dr/dx, dq/dx, dr/dalpha) are returned as
// column vectors.
struct SystemSpec {
  using Field = std::function<Vector(const Vector& x, const Vector& alpha,
                                     double t)>;
  using Running = std::function<double(const Vector& x, const Vector& alpha,
                                       double t)>;
  using Terminal = std::function<double(const Vector& x)>;
  using FieldJacobian = std::function<Matrix(const Vector& x,
                                             const Vector& alpha, double t)>;
  using RunningGradient = std::function<Vector(const Vector& x,
                                               const Vector& alpha, double t)>;
  using TerminalGradient = std::function<Vector(const Vector& x)>;

  int state_dim = 0;
  int decision_dim = 0;
  Vector initial_state;
  double horizon = 1.0;

  Field vector_field;
  Running running_payoff;
  Terminal terminal_payoff;
  FieldJacobian jac_f_x;        // n x n
  RunningGradient jac_r_x;      // length n
  TerminalGradient jac_q_x;     // length n
  FieldJacobian jac_f_alpha;    // n x m, optional
  RunningGradient jac_r_alpha;  // length m, optional

  // True iff f and r accept alpha in [0,1]^m rather than only {0,1}^m.
  bool relaxable = true;

  // Throws kInvalidArgument if a mandatory contract is missing or the
  // dimensions are inconsistent.
  void Validate() const;
};

class TimeGrid {
 public:
  // Throws kInvalidArgument unless horizon > 0 and num_points >= 2.
  TimeGrid(double horizon, int num_points);

  int num_points() const { return num_points_; }
  double horizon() const { return horizon_; }
  double step() const { return step_; }
  // Knot k; the last knot is exactly the horizon.
  double Time(int k) const;
  // Trapezoid weight of knot k.
  double Weight(int k) const;

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

 private:
  double horizon_;
  int num_points_;
  double step_;
};

// State path on a uniform grid: row k of `values` is the state at knot k.
struct Trajectory {
  TimeGrid grid;
  Matrix values;
  Scheme scheme = Scheme::kEuler;

  Vector State(int k) const { return values.row(k).transpose(); }
  Vector Final() const { return State(grid.num_points() - 1); }
};

// Explicit fixed-step integration of x' = f(x, alpha, t) from the spec's
// initial state. Throws kIntegrationDiverged (index = knot) on a non-finite
// state and kInvalidArgument if alpha leaves {0,1}^m for a non-relaxable
// spec or [0,1]^m otherwise.
Trajectory Integrate(const SystemSpec& spec, const Vector& alpha,
                     const TimeGrid& grid, Scheme scheme = Scheme::kEuler);
Trajectory Integrate(const SystemSpec& spec, const BinaryVector& alpha,
                     const TimeGrid& grid, Scheme scheme = Scheme::kEuler);

// Trapezoid quadrature of r along `traj` plus q at the final state.
// Throws kDimension if the trajectory does not belong to the spec.
double EvaluatePayoff(const SystemSpec& spec, const Trajectory& traj,
                      const Vector& alpha);

// Integrates the epsilon-variational system whose field is
// (1 - eps) f(., base) + eps f(., dir). eps = 0 and eps = 1 reproduce
// Integrate(base) and Integrate(dir) exactly.
Trajectory IntegrateVariational(const SystemSpec& spec,
                                const BinaryVector& base,
                                const BinaryVector& dir, double epsilon,
                                const TimeGrid& grid,
                                Scheme scheme = Scheme::kEuler);

// (1 - eps) * payoff(traj, base) + eps * payoff(traj, dir), each payoff
// evaluated along the same path with the running payoff's alpha swapped.
double EvaluateVariationalPayoff(const SystemSpec& spec, const Trajectory& traj,
                                 const BinaryVector& base,
                                 const BinaryVector& dir, double epsilon);

// Convenience: integrate and evaluate in one call.
double Payoff(const SystemSpec& spec, const Vector& alpha,
              const TimeGrid& grid, Scheme scheme = Scheme::kEuler);
double Payoff(const SystemSpec& spec, const BinaryVector& alpha,
              const TimeGrid& grid, Scheme scheme = Scheme::kEuler);

}  // namespace cdsopt

#endif  // CDSOPT_SYSMODEL_H_
