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


#include "cdsopt/simplex.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "cdsopt/error.h"

namespace cdsopt {

void LpProblem::Validate() const {
  if (rows.cols() != objective.size() || rows.rows() != rhs.size()) {
    throw Error(ErrorCode::kDimension, "LP dimensions are inconsistent");
  }
  if (!objective.allFinite() || !rows.allFinite() || !rhs.allFinite()) {
    throw Error(ErrorCode::kInvalidArgument, "LP data must be finite");
  }
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kCostTol = 1e-9;
constexpr double kPivotTol = 1e-11;
constexpr double kTieTol = 1e-12;
constexpr int kMaxIterations = 100000;

// Tableau over structural, slack and artificial columns. Every row of
// `tab` is expressed in the current basis.
class Tableau {
 public:
  explicit Tableau(const LpProblem& lp) {
    m_ = static_cast<int>(lp.objective.size());
    l_ = static_cast<int>(lp.rhs.size());
    std::vector<int> negative;
    for (int i = 0; i < l_; ++i) {
      if (lp.rhs[i] < 0.0) negative.push_back(i);
    }
    const int n = m_ + l_ + static_cast<int>(negative.size());
    tab_ = Matrix::Zero(l_, n);
    lower_.assign(n, 0.0);
    upper_.assign(n, kInf);
    at_upper_.assign(n, false);
    for (int j = 0; j < m_; ++j) upper_[j] = 1.0;
    basis_.resize(l_);
    beta_.resize(l_);
    int art = m_ + l_;
    for (int i = 0; i < l_; ++i) {
      const double sign = lp.rhs[i] < 0.0 ? -1.0 : 1.0;
      tab_.row(i).head(m_) = sign * lp.rows.row(i);
      tab_(i, m_ + i) = sign;
      beta_[i] = sign * lp.rhs[i];
      if (sign < 0.0) {
        tab_(i, art) = 1.0;
        basis_[i] = art++;
      } else {
        basis_[i] = m_ + i;
      }
    }
    first_artificial_ = m_ + l_;
  }

  int num_artificial() const { return tab_.cols() - first_artificial_; }

  // Maximizes cost^T z from the current basis.
  void Optimize(const std::vector<double>& cost) {
    const int n = static_cast<int>(tab_.cols());
    std::vector<bool> basic(n, false);
    for (int b : basis_) basic[b] = true;
    for (;;) {
      if (++iterations_ > kMaxIterations) {
        throw Error(ErrorCode::kInvalidArgument, "simplex iteration limit");
      }
      int enter = -1;
      for (int j = 0; j < n && enter < 0; ++j) {
        if (basic[j] || upper_[j] <= lower_[j]) continue;
        double d = cost[j];
        for (int i = 0; i < l_; ++i) d -= cost[basis_[i]] * tab_(i, j);
        if ((d > kCostTol && !at_upper_[j]) || (d < -kCostTol && at_upper_[j])) {
          enter = j;
        }
      }
      if (enter < 0) return;
      const double dir = at_upper_[enter] ? -1.0 : 1.0;
      double step = upper_[enter] - lower_[enter];
      int leave = -1;
      for (int i = 0; i < l_; ++i) {
        const double rate = -dir * tab_(i, enter);
        if (std::abs(rate) <= kPivotTol) continue;
        const int b = basis_[i];
        double limit;
        if (rate < 0.0) {
          limit = (beta_[i] - lower_[b]) / -rate;
        } else {
          if (upper_[b] == kInf) continue;
          limit = (upper_[b] - beta_[i]) / rate;
        }
        limit = std::max(limit, 0.0);
        if (limit < step - kTieTol ||
            (leave >= 0 && limit <= step + kTieTol && b < basis_[leave])) {
          step = limit;
          leave = i;
        }
      }
      if (step == kInf) {
        throw Error(ErrorCode::kInvalidArgument, "LP is unbounded");
      }
      for (int i = 0; i < l_; ++i) beta_[i] += -dir * tab_(i, enter) * step;
      if (leave < 0) {
        at_upper_[enter] = !at_upper_[enter];
        continue;
      }
      const int out = basis_[leave];
      at_upper_[out] = -dir * tab_(leave, enter) > 0.0;
      const double entered = at_upper_[enter] ? upper_[enter] - step
                                              : lower_[enter] + step;
      Pivot(leave, enter);
      beta_[leave] = entered;
      basic[out] = false;
      basic[enter] = true;
      basis_[leave] = enter;
    }
  }

  double ArtificialSum() const {
    double s = 0.0;
    for (int i = 0; i < l_; ++i) {
      if (basis_[i] >= first_artificial_) s += beta_[i];
    }
    return s;
  }

  void FixArtificials() {
    for (int j = first_artificial_; j < tab_.cols(); ++j) upper_[j] = 0.0;
    for (int i = 0; i < l_; ++i) {
      if (basis_[i] >= first_artificial_) beta_[i] = 0.0;
    }
  }

  Vector Structural() const {
    Vector x(m_);
    for (int j = 0; j < m_; ++j) x[j] = at_upper_[j] ? upper_[j] : lower_[j];
    for (int i = 0; i < l_; ++i) {
      if (basis_[i] < m_) x[basis_[i]] = beta_[i];
    }
    return x.cwiseMax(0.0).cwiseMin(1.0);
  }

  int m() const { return m_; }
  int iterations() const { return iterations_; }

 private:
  void Pivot(int r, int c) {
    tab_.row(r) /= tab_(r, c);
    for (int i = 0; i < l_; ++i) {
      if (i == r) continue;
      const double factor = tab_(i, c);
      if (factor != 0.0) tab_.row(i) -= factor * tab_.row(r);
    }
  }

  int m_ = 0;
  int l_ = 0;
  int first_artificial_ = 0;
  int iterations_ = 0;
  Matrix tab_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<bool> at_upper_;
  std::vector<int> basis_;
  std::vector<double> beta_;
};

}  // namespace

LpSolution SolveBoxLp(const LpProblem& problem) {
  problem.Validate();
  Tableau tableau(problem);
  const int n = tableau.m() + static_cast<int>(problem.rhs.size()) +
                tableau.num_artificial();
  if (tableau.num_artificial() > 0) {
    std::vector<double> phase_one(n, 0.0);
    for (int j = n - tableau.num_artificial(); j < n; ++j) phase_one[j] = -1.0;
    tableau.Optimize(phase_one);
    if (tableau.ArtificialSum() > 1e-9) {
      throw Error(ErrorCode::kInfeasible, "LP relaxation is infeasible");
    }
    tableau.FixArtificials();
  }
  std::vector<double> cost(n, 0.0);
  for (int j = 0; j < tableau.m(); ++j) cost[j] = problem.objective[j];
  tableau.Optimize(cost);
  LpSolution sol;
  sol.x = tableau.Structural();
  sol.objective = problem.objective.dot(sol.x);
  sol.iterations = tableau.iterations();
  return sol;
}

}  // namespace cdsopt
