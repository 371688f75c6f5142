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

#include "cdsopt/sysmodel.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "cdsopt/error.h"
#include "stepper.h"

namespace cdsopt {

BinaryVector::BinaryVector(int size) {
  if (size < 0) {
    throw Error(ErrorCode::kInvalidArgument, "negative BinaryVector size");
  }
  bits_.assign(size, 0);
}

BinaryVector::BinaryVector(std::vector<std::uint8_t> bits)
    : bits_(std::move(bits)) {
  for (std::uint8_t b : bits_) {
    if (b > 1) {
      throw Error(ErrorCode::kInvalidArgument,
                  "BinaryVector entries must be 0 or 1");
    }
  }
}

BinaryVector BinaryVector::FromMask(std::uint64_t mask, int size) {
  if (size > 64) {
    throw Error(ErrorCode::kInvalidArgument, "mask supports at most 64 bits");
  }
  BinaryVector v(size);
  for (int i = 0; i < size; ++i) v.bits_[i] = (mask >> i) & 1u;
  return v;
}

BinaryVector BinaryVector::Ones(int size) {
  BinaryVector v(size);
  std::fill(v.bits_.begin(), v.bits_.end(), 1);
  return v;
}

BinaryVector BinaryVector::Unit(int size, int index) {
  BinaryVector v(size);
  v.bits_.at(index) = 1;
  return v;
}

BinaryVector BinaryVector::FromReal(const Vector& values, double tol) {
  BinaryVector v(static_cast<int>(values.size()));
  for (int i = 0; i < v.size(); ++i) {
    if (std::abs(values[i]) <= tol) {
      v.bits_[i] = 0;
    } else if (std::abs(values[i] - 1.0) <= tol) {
      v.bits_[i] = 1;
    } else {
      throw Error(ErrorCode::kInvalidArgument,
                  "entry " + std::to_string(i) + " is not binary");
    }
  }
  return v;
}

BinaryVector BinaryVector::Parse(std::string_view text) {
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw Error(ErrorCode::kInvalidArgument,
                  "binary vector text must contain only 0 and 1");
    }
    bits.push_back(c == '1');
  }
  return BinaryVector(std::move(bits));
}

BinaryVector BinaryVector::Flipped(int i) const {
  BinaryVector v = *this;
  v.bits_.at(i) ^= 1u;
  return v;
}

int BinaryVector::Count() const {
  return static_cast<int>(std::count(bits_.begin(), bits_.end(), 1));
}

std::uint64_t BinaryVector::Mask() const {
  if (size() > 64) {
    throw Error(ErrorCode::kInvalidArgument, "mask supports at most 64 bits");
  }
  std::uint64_t mask = 0;
  for (int i = 0; i < size(); ++i) {
    if (bits_[i]) mask |= std::uint64_t{1} << i;
  }
  return mask;
}

Vector BinaryVector::ToReal() const {
  Vector v(size());
  for (int i = 0; i < size(); ++i) v[i] = bits_[i];
  return v;
}

std::string BinaryVector::ToString() const {
  std::string s(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) s[i] = '1';
  }
  return s;
}

std::string_view SchemeName(Scheme scheme) {
  return scheme == Scheme::kEuler ? "euler" : "rk4";
}

Scheme ParseScheme(std::string_view name) {
  if (name == "euler") return Scheme::kEuler;
  if (name == "rk4") return Scheme::kRk4;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown scheme '" + std::string(name) + "'");
}

void SystemSpec::Validate() const {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kInvalidArgument, "SystemSpec: " + what);
  };
  if (state_dim <= 0) fail("state_dim must be positive");
  if (decision_dim <= 0) fail("decision_dim must be positive");
  if (initial_state.size() != state_dim) fail("initial_state has wrong size");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    fail("horizon must be positive");
  }
  if (!vector_field) fail("vector_field missing");
  if (!running_payoff) fail("running_payoff missing");
  if (!terminal_payoff) fail("terminal_payoff missing");
  if (!jac_f_x) fail("jac_f_x missing");
  if (!jac_r_x) fail("jac_r_x missing");
  if (!jac_q_x) fail("jac_q_x missing");
}

TimeGrid::TimeGrid(double horizon, int num_points)
    : horizon_(horizon), num_points_(num_points) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw Error(ErrorCode::kInvalidArgument, "grid horizon must be positive");
  }
  if (num_points < 2) {
    throw Error(ErrorCode::kInvalidArgument, "grid needs at least 2 points");
  }
  step_ = horizon / (num_points - 1);
}

double TimeGrid::Time(int k) const {
  return k == num_points_ - 1 ? horizon_ : k * step_;
}

double TimeGrid::Weight(int k) const {
  return (k == 0 || k == num_points_ - 1) ? 0.5 * step_ : step_;
}

namespace {

void CheckAlpha(const SystemSpec& spec, const Vector& alpha) {
  if (alpha.size() != spec.decision_dim) {
    throw Error(ErrorCode::kDimension, "alpha has wrong size");
  }
  for (int i = 0; i < alpha.size(); ++i) {
    const double a = alpha[i];
    const bool binary = a == 0.0 || a == 1.0;
    if (spec.relaxable ? !(a >= 0.0 && a <= 1.0) : !binary) {
      throw Error(ErrorCode::kInvalidArgument,
                  spec.relaxable ? "alpha must lie in [0,1]^m"
                                 : "alpha must be binary for a non-relaxable "
                                   "system");
    }
  }
}

void CheckTrajectory(const SystemSpec& spec, const Trajectory& traj) {
  const double tol = 1e-12 * std::max(1.0, spec.horizon);
  if (std::abs(traj.grid.horizon() - spec.horizon) > tol) {
    throw Error(ErrorCode::kDimension,
                "trajectory horizon does not match the spec");
  }
  if (traj.values.cols() != spec.state_dim ||
      traj.values.rows() != traj.grid.num_points()) {
    throw Error(ErrorCode::kDimension,
                "trajectory shape does not match the spec");
  }
}

double RunningIntegral(const SystemSpec& spec, const Trajectory& traj,
                       const Vector& alpha) {
  double sum = 0.0;
  for (int k = 0; k < traj.grid.num_points(); ++k) {
    sum += traj.grid.Weight(k) *
           spec.running_payoff(traj.State(k), alpha, traj.grid.Time(k));
  }
  return sum;
}

}  // namespace

Trajectory Integrate(const SystemSpec& spec, const Vector& alpha,
                     const TimeGrid& grid, Scheme scheme) {
  CheckAlpha(spec, alpha);
  if (std::abs(grid.horizon() - spec.horizon) >
      1e-12 * std::max(1.0, spec.horizon)) {
    throw Error(ErrorCode::kDimension, "grid horizon does not match the spec");
  }
  return internal::Run(
      [&](const Vector& x, double t) { return spec.vector_field(x, alpha, t); },
      spec.initial_state, grid, scheme);
}

Trajectory Integrate(const SystemSpec& spec, const BinaryVector& alpha,
                     const TimeGrid& grid, Scheme scheme) {
  return Integrate(spec, alpha.ToReal(), grid, scheme);
}

double EvaluatePayoff(const SystemSpec& spec, const Trajectory& traj,
                      const Vector& alpha) {
  CheckTrajectory(spec, traj);
  if (alpha.size() != spec.decision_dim) {
    throw Error(ErrorCode::kDimension, "alpha has wrong size");
  }
  return RunningIntegral(spec, traj, alpha) +
         spec.terminal_payoff(traj.Final());
}

Trajectory IntegrateVariational(const SystemSpec& spec,
                                const BinaryVector& base,
                                const BinaryVector& dir, double epsilon,
                                const TimeGrid& grid, Scheme scheme) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "epsilon must lie in [0,1]");
  }
  if (epsilon == 0.0) return Integrate(spec, base, grid, scheme);
  if (epsilon == 1.0) return Integrate(spec, dir, grid, scheme);
  const Vector a_base = base.ToReal();
  const Vector a_dir = dir.ToReal();
  CheckAlpha(spec, a_base);
  CheckAlpha(spec, a_dir);
  return internal::Run(
      [&](const Vector& x, double t) -> Vector {
        return (1.0 - epsilon) * spec.vector_field(x, a_base, t) +
               epsilon * spec.vector_field(x, a_dir, t);
      },
      spec.initial_state, grid, scheme);
}

double EvaluateVariationalPayoff(const SystemSpec& spec, const Trajectory& traj,
                                 const BinaryVector& base,
                                 const BinaryVector& dir, double epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "epsilon must lie in [0,1]");
  }
  if (epsilon == 0.0) return EvaluatePayoff(spec, traj, base.ToReal());
  if (epsilon == 1.0) return EvaluatePayoff(spec, traj, dir.ToReal());
  return (1.0 - epsilon) * EvaluatePayoff(spec, traj, base.ToReal()) +
         epsilon * EvaluatePayoff(spec, traj, dir.ToReal());
}

namespace internal {

double PayoffUnchecked(const SystemSpec& spec, const Vector& alpha,
                       const TimeGrid& grid, Scheme scheme) {
  Trajectory traj = Run(
      [&](const Vector& x, double t) { return spec.vector_field(x, alpha, t); },
      spec.initial_state, grid, scheme);
  return RunningIntegral(spec, traj, alpha) +
         spec.terminal_payoff(traj.Final());
}

}  // namespace internal

double Payoff(const SystemSpec& spec, const Vector& alpha,
              const TimeGrid& grid, Scheme scheme) {
  return EvaluatePayoff(spec, Integrate(spec, alpha, grid, scheme), alpha);
}

double Payoff(const SystemSpec& spec, const BinaryVector& alpha,
              const TimeGrid& grid, Scheme scheme) {
  return Payoff(spec, alpha.ToReal(), grid, scheme);
}

}  // namespace cdsopt
