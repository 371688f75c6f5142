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


#include "cdsopt/bounds.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "cdsopt/error.h"
#include "cdsopt/parallel.h"

namespace cdsopt {

CertifiedSolution CertifyWithPayoff(const Gradient& grad,
                                    const BinaryVector& alpha_star,
                                    double payoff_star, double solver_ratio,
                                    bool base_feasible) {
  const BinaryVector& bar = grad.base_point;
  if (alpha_star.size() != bar.size() ||
      grad.entries.size() != bar.size()) {
    throw Error(ErrorCode::kDimension, "certificate dimensions disagree");
  }
  if (!(solver_ratio > 0.0 && solver_ratio <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "solver ratio must lie in (0,1]");
  }
  CertifiedSolution cert;
  cert.alpha_star = alpha_star;
  cert.kind = grad.kind;
  cert.payoff = payoff_star;
  cert.base_payoff = grad.base_payoff;
  cert.denominator = grad.entries.dot(alpha_star.ToReal()) / solver_ratio -
                     grad.entries.dot(bar.ToReal());
  const double normalized = payoff_star - grad.base_payoff;
  if (std::abs(cert.denominator) < kDenominatorTol) {
    cert.optimal = true;
    cert.rho = 1.0;
    cert.rho_post = 1.0;
  } else {
    cert.rho = normalized / cert.denominator;
    cert.rho_post = std::max(cert.rho, 0.0);
  }
  if (base_feasible && normalized < 0.0) {
    cert.alpha_post = bar;
    cert.post_payoff = grad.base_payoff;
  } else {
    cert.alpha_post = alpha_star;
    cert.post_payoff = payoff_star;
  }
  return cert;
}

CertifiedSolution Certify(const SystemSpec& spec, const BinaryVector& alpha_bar,
                          const Gradient& grad,
                          const BinaryVector& alpha_star, const TimeGrid& grid,
                          Scheme scheme, double solver_ratio,
                          bool base_feasible) {
  if (alpha_bar != grad.base_point) {
    throw Error(ErrorCode::kInvalidArgument,
                "gradient was not computed at alpha_bar");
  }
  if (alpha_star.size() != spec.decision_dim) {
    throw Error(ErrorCode::kDimension, "alpha_star has wrong size");
  }
  const double payoff = alpha_star == alpha_bar
                            ? grad.base_payoff
                            : Payoff(spec, alpha_star, grid, scheme);
  return CertifyWithPayoff(grad, alpha_star, payoff, solver_ratio,
                           base_feasible);
}

std::vector<double> EvaluateAll(const SetObjective& payoff, int m) {
  if (m < 0 || m > kMaxEnumerationDim) {
    throw Error(ErrorCode::kEnumerationRefused,
                "enumeration limited to m <= 24");
  }
  const std::int64_t count = std::int64_t{1} << m;
  std::vector<double> values(static_cast<std::size_t>(count));
  ParallelChunks(0, count, [&](std::int64_t lo, std::int64_t hi, int) {
    for (std::int64_t mask = lo; mask < hi; ++mask) {
      values[mask] =
          payoff(BinaryVector::FromMask(static_cast<std::uint64_t>(mask), m));
    }
  });
  return values;
}

ConcavityReport CheckConcavityInequality(const SetObjective& payoff,
                                         const Gradient& grad) {
  const int m = grad.base_point.size();
  if (m > kMaxConcavityDim) {
    throw Error(ErrorCode::kEnumerationRefused,
                "concavity check limited to m <= 20, got " + std::to_string(m));
  }
  const std::vector<double> values = EvaluateAll(payoff, m);
  const double base = grad.base_payoff;
  const double linear_bar = grad.entries.dot(grad.base_point.ToReal());
  ConcavityReport report;
  report.worst = grad.base_point;
  report.worst_violation = -std::numeric_limits<double>::infinity();
  for (std::size_t mask = 0; mask < values.size(); ++mask) {
    double linear = -linear_bar;
    for (int i = 0; i < m; ++i) {
      if ((mask >> i) & 1u) linear += grad.entries[i];
    }
    const double excess = values[mask] - base - linear;
    if (excess > report.worst_violation) {
      report.worst_violation = excess;
      report.worst = BinaryVector::FromMask(mask, m);
    }
    if (excess > 1e-7 * (1.0 + std::abs(values[mask]))) report.holds = false;
    ++report.checked;
  }
  return report;
}

ConcavityReport CheckConcavityInequality(const SystemSpec& spec,
                                         const BinaryVector& alpha_bar,
                                         const Gradient& grad,
                                         const TimeGrid& grid, Scheme scheme) {
  if (alpha_bar != grad.base_point) {
    throw Error(ErrorCode::kInvalidArgument,
                "gradient was not computed at alpha_bar");
  }
  if (spec.decision_dim > kMaxConcavityDim) {
    throw Error(ErrorCode::kEnumerationRefused,
                "concavity check limited to m <= 20");
  }
  return CheckConcavityInequality(
      [&](const BinaryVector& a) { return Payoff(spec, a, grid, scheme); },
      grad);
}

namespace {

std::vector<double> SetValues(const SetObjective& payoff, int m) {
  if (m < 0 || m > kMaxSetCheckDim) {
    throw Error(ErrorCode::kEnumerationRefused,
                "set-function checks limited to m <= 14, got " +
                    std::to_string(m));
  }
  return EvaluateAll(payoff, m);
}

double Tolerance(const std::vector<double>& values) {
  double scale = 0.0;
  for (double v : values) scale = std::max(scale, std::abs(v));
  return 1e-9 * (1.0 + scale);
}

}  // namespace

SetFunctionReport CheckSubmodular(const SetObjective& payoff, int m) {
  const std::vector<double> j = SetValues(payoff, m);
  const double tol = Tolerance(j);
  SetFunctionReport report;
  report.worst_violation = -std::numeric_limits<double>::infinity();
  for (std::uint64_t x = 0; x < j.size(); ++x) {
    for (int s = 0; s < m; ++s) {
      if ((x >> s) & 1u) continue;
      for (int t = s + 1; t < m; ++t) {
        if ((x >> t) & 1u) continue;
        const std::uint64_t xs = x | (1u << s);
        const std::uint64_t xt = x | (1u << t);
        const double second = j[xs | xt] - j[xs] - j[xt] + j[x];
        if (second > report.worst_violation) {
          report.worst_violation = second;
          report.witness = BinaryVector::FromMask(x, m);
          report.first = s;
          report.second = t;
        }
        if (second > tol) report.holds = false;
      }
    }
  }
  if (report.first < 0) report.worst_violation = 0.0;
  return report;
}

SetFunctionReport CheckMonotone(const SetObjective& payoff, int m) {
  const std::vector<double> j = SetValues(payoff, m);
  const double tol = Tolerance(j);
  SetFunctionReport report;
  report.worst_violation = -std::numeric_limits<double>::infinity();
  for (std::uint64_t x = 0; x < j.size(); ++x) {
    for (int s = 0; s < m; ++s) {
      if ((x >> s) & 1u) continue;
      const double drop = j[x] - j[x | (1u << s)];
      if (drop > report.worst_violation) {
        report.worst_violation = drop;
        report.witness = BinaryVector::FromMask(x, m);
        report.first = s;
      }
      if (drop > tol) report.holds = false;
    }
  }
  if (report.first < 0) report.worst_violation = 0.0;
  return report;
}

}  // namespace cdsopt
