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


#include "cdsopt/combisolve.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "cdsopt/error.h"
#include "cdsopt/parallel.h"
#include "cdsopt/simplex.h"

namespace cdsopt {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

constexpr double kSnapTol = 1e-7;

std::vector<int> SortedDescending(const Vector& entries) {
  std::vector<int> order(entries.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return entries[a] > entries[b]; });
  return order;
}

bool IsSubset(const BinaryVector& small, const BinaryVector& big) {
  for (int i = 0; i < small.size(); ++i) {
    if (small[i] && !big[i]) return false;
  }
  return true;
}

// Distance of alpha from the feasible set along switch-on moves; zero iff
// alpha is feasible, infinite if no superset of alpha is feasible.
double Violation(const ConstraintSet& constraints, const BinaryVector& alpha) {
  return std::visit(
      Overloaded{
          [&](const L0Band& c) -> double {
            const int k = alpha.Count();
            return std::max(0, c.k_min - k) + std::max(0, k - c.k_max);
          },
          [&](const TuConstraint& c) -> double {
            double v = 0.0;
            for (int i = 0; i < c.q.rows(); ++i) {
              long long row = 0;
              for (int j = 0; j < c.q.cols(); ++j) {
                if (alpha[j]) row += c.q(i, j);
              }
              v += std::max<long long>(0, row - c.r[i]);
            }
            return v;
          },
          [&](const KnapsackConstraint& c) -> double {
            return std::max(0.0, alpha.ToReal().dot(c.weights) - c.capacity);
          },
          [&](const ExplicitSet& c) -> double {
            double best = std::numeric_limits<double>::infinity();
            for (const BinaryVector& beta : c.admissible) {
              if (IsSubset(alpha, beta)) {
                best = std::min<double>(best, beta.Count() - alpha.Count());
              }
            }
            return best;
          },
      },
      constraints);
}

long long Determinant(std::vector<long long> a, int k) {
  // Fraction-free Gaussian elimination.
  long long sign = 1;
  long long prev = 1;
  for (int p = 0; p < k; ++p) {
    if (a[p * k + p] == 0) {
      int swap = -1;
      for (int i = p + 1; i < k; ++i) {
        if (a[i * k + p] != 0) {
          swap = i;
          break;
        }
      }
      if (swap < 0) return 0;
      for (int j = 0; j < k; ++j) std::swap(a[p * k + j], a[swap * k + j]);
      sign = -sign;
    }
    for (int i = p + 1; i < k; ++i) {
      for (int j = p + 1; j < k; ++j) {
        a[i * k + j] =
            (a[i * k + j] * a[p * k + p] - a[i * k + p] * a[p * k + j]) / prev;
      }
    }
    prev = a[p * k + p];
  }
  return sign * a[k * k - 1];
}

void CheckTuSize(const IntMatrix& q, const IntVector& r, int m) {
  if (q.cols() != m || q.rows() != r.size()) {
    throw Error(ErrorCode::kDimension, "TU constraint has wrong shape");
  }
}

}  // namespace

void ValidateConstraints(const ConstraintSet& constraints, int m) {
  std::visit(
      Overloaded{
          [&](const L0Band& c) {
            if (!(0 <= c.k_min && c.k_min <= c.k_max && c.k_max <= m)) {
              throw Error(ErrorCode::kConstraint,
                          "l0 band requires 0 <= k_min <= k_max <= m");
            }
          },
          [&](const TuConstraint& c) { CheckTuSize(c.q, c.r, m); },
          [&](const KnapsackConstraint& c) {
            if (c.weights.size() != m) {
              throw Error(ErrorCode::kDimension, "knapsack weights size");
            }
            if (!(c.capacity >= 0.0) || !std::isfinite(c.capacity)) {
              throw Error(ErrorCode::kConstraint,
                          "knapsack capacity must be nonnegative");
            }
            for (int i = 0; i < m; ++i) {
              if (!(c.weights[i] >= 0.0) || !std::isfinite(c.weights[i])) {
                throw Error(ErrorCode::kConstraint,
                            "knapsack weights must be nonnegative", i);
              }
            }
          },
          [&](const ExplicitSet& c) {
            for (const BinaryVector& v : c.admissible) {
              if (v.size() != m) {
                throw Error(ErrorCode::kDimension,
                            "explicit vector has wrong size");
              }
            }
          },
      },
      constraints);
}

bool IsFeasible(const ConstraintSet& constraints, const BinaryVector& alpha) {
  if (const auto* set = std::get_if<ExplicitSet>(&constraints)) {
    return std::find(set->admissible.begin(), set->admissible.end(), alpha) !=
           set->admissible.end();
  }
  if (const auto* k = std::get_if<KnapsackConstraint>(&constraints)) {
    return alpha.ToReal().dot(k->weights) <= k->capacity * (1.0 + 1e-12);
  }
  return Violation(constraints, alpha) == 0.0;
}

bool IsTotallyUnimodular(const IntMatrix& q) {
  for (int i = 0; i < q.rows(); ++i) {
    for (int j = 0; j < q.cols(); ++j) {
      if (std::abs(q(i, j)) > 1) return false;
    }
  }
  const int l = static_cast<int>(q.rows());
  const int m = static_cast<int>(q.cols());
  if (l > 20 || m > 20) {
    throw Error(ErrorCode::kEnumerationRefused,
                "exhaustive TU check limited to 20 rows and columns");
  }
  std::vector<std::vector<int>> row_sets(std::min(l, m) + 1);
  std::vector<std::vector<int>> col_sets(std::min(l, m) + 1);
  for (std::uint32_t s = 1; s < (1u << l); ++s) {
    const int k = std::popcount(s);
    if (k <= std::min(l, m)) row_sets[k].push_back(static_cast<int>(s));
  }
  for (std::uint32_t s = 1; s < (1u << m); ++s) {
    const int k = std::popcount(s);
    if (k <= std::min(l, m)) col_sets[k].push_back(static_cast<int>(s));
  }
  std::vector<long long> sub;
  for (int k = 2; k <= std::min(l, m); ++k) {
    for (int rs : row_sets[k]) {
      for (int cs : col_sets[k]) {
        sub.clear();
        for (int i = 0; i < l; ++i) {
          if (!((rs >> i) & 1)) continue;
          for (int j = 0; j < m; ++j) {
            if ((cs >> j) & 1) sub.push_back(q(i, j));
          }
        }
        if (std::abs(Determinant(sub, k)) > 1) return false;
      }
    }
  }
  return true;
}

BinaryVector SolveL0(const Vector& entries, int k_min, int k_max) {
  const int m = static_cast<int>(entries.size());
  ValidateConstraints(L0Band{k_min, k_max}, m);
  const std::vector<int> order = SortedDescending(entries);
  BinaryVector alpha(m);
  for (int r = 0; r < k_min; ++r) alpha.Set(order[r], true);
  for (int r = k_min; r < k_max && entries[order[r]] > 0.0; ++r) {
    alpha.Set(order[r], true);
  }
  return alpha;
}

BinaryVector SolveL0(const Gradient& grad, int k_min, int k_max) {
  return SolveL0(grad.entries, k_min, k_max);
}

BinaryVector SolveTu(const Vector& entries, const IntMatrix& q,
                     const IntVector& r) {
  const int m = static_cast<int>(entries.size());
  CheckTuSize(q, r, m);
  if (q.rows() <= 8 && q.cols() <= 8 ? !IsTotallyUnimodular(q)
                                     : q.cwiseAbs().maxCoeff() > 1) {
    throw Error(ErrorCode::kTuViolation, "constraint matrix is not TU");
  }
  LpProblem lp{entries, q.cast<double>(), r.cast<double>()};
  const LpSolution sol = SolveBoxLp(lp);
  BinaryVector alpha(m);
  for (int i = 0; i < m; ++i) {
    if (std::abs(sol.x[i] - std::round(sol.x[i])) > kSnapTol) {
      throw Error(ErrorCode::kTuViolation,
                  "LP vertex is fractional at entry " + std::to_string(i), i);
    }
    alpha.Set(i, sol.x[i] > 0.5);
  }
  return alpha;
}

BinaryVector SolveTu(const Gradient& grad, const IntMatrix& q,
                     const IntVector& r) {
  return SolveTu(grad.entries, q, r);
}

BinaryVector SolveKnapsack(const Vector& entries, const Vector& weights,
                           double capacity) {
  const int m = static_cast<int>(entries.size());
  ValidateConstraints(KnapsackConstraint{weights, capacity}, m);
  BinaryVector packed(m);
  std::vector<int> items;
  for (int i = 0; i < m; ++i) {
    if (entries[i] <= 0.0) continue;
    if (weights[i] == 0.0) {
      packed.Set(i, true);
    } else {
      items.push_back(i);
    }
  }
  BinaryVector single = packed;
  std::stable_sort(items.begin(), items.end(), [&](int a, int b) {
    return entries[a] * weights[b] > entries[b] * weights[a];
  });
  double load = 0.0;
  double value = 0.0;
  int best_item = -1;
  for (int i : items) {
    if (load + weights[i] <= capacity) {
      load += weights[i];
      value += entries[i];
      packed.Set(i, true);
    }
    if (weights[i] <= capacity &&
        (best_item < 0 || entries[i] > entries[best_item])) {
      best_item = i;
    }
  }
  if (best_item >= 0 && entries[best_item] > value) {
    single.Set(best_item, true);
    return single;
  }
  return packed;
}

BinaryVector SolveKnapsack(const Gradient& grad, const Vector& weights,
                           double capacity) {
  return SolveKnapsack(grad.entries, weights, capacity);
}

BinaryVector SolveLinearized(const Vector& entries,
                             const ConstraintSet& constraints) {
  const int m = static_cast<int>(entries.size());
  ValidateConstraints(constraints, m);
  return std::visit(
      Overloaded{
          [&](const L0Band& c) { return SolveL0(entries, c.k_min, c.k_max); },
          [&](const TuConstraint& c) { return SolveTu(entries, c.q, c.r); },
          [&](const KnapsackConstraint& c) {
            return SolveKnapsack(entries, c.weights, c.capacity);
          },
          [&](const ExplicitSet& c) {
            if (c.admissible.empty()) {
              throw Error(ErrorCode::kInfeasible, "explicit set is empty");
            }
            const BinaryVector* best = nullptr;
            double best_value = 0.0;
            for (const BinaryVector& v : c.admissible) {
              const double value = v.ToReal().dot(entries);
              if (best == nullptr || value > best_value ||
                  (value == best_value && v < *best)) {
                best = &v;
                best_value = value;
              }
            }
            return *best;
          },
      },
      constraints);
}

double SolverRatio(const ConstraintSet& constraints) {
  return std::holds_alternative<KnapsackConstraint>(constraints) ? 0.5 : 1.0;
}

BruteForceResult SolveBruteForce(const SetObjective& objective,
                                 const ConstraintSet& constraints, int m) {
  if (m < 0 || m > kMaxEnumerationDim) {
    throw Error(ErrorCode::kEnumerationRefused,
                "brute force limited to m <= 24, got " + std::to_string(m));
  }
  ValidateConstraints(constraints, m);
  auto better = [](double v, const BinaryVector& a, const BruteForceResult& b) {
    return b.evaluated == 0 || v > b.value || (v == b.value && a < b.alpha);
  };
  if (const auto* set = std::get_if<ExplicitSet>(&constraints)) {
    BruteForceResult best;
    for (const BinaryVector& v : set->admissible) {
      const double value = objective(v);
      if (better(value, v, best)) {
        best.alpha = v;
        best.value = value;
      }
      ++best.evaluated;
    }
    if (best.evaluated == 0) {
      throw Error(ErrorCode::kInfeasible, "explicit set is empty");
    }
    return best;
  }
  const std::int64_t count = std::int64_t{1} << m;
  std::vector<BruteForceResult> partial(std::max(1, ChunkCount(count)));
  ParallelChunks(0, count, [&](std::int64_t lo, std::int64_t hi, int chunk) {
    BruteForceResult& best = partial[chunk];
    for (std::int64_t mask = lo; mask < hi; ++mask) {
      const BinaryVector alpha =
          BinaryVector::FromMask(static_cast<std::uint64_t>(mask), m);
      if (!IsFeasible(constraints, alpha)) continue;
      const double value = objective(alpha);
      if (better(value, alpha, best)) {
        best.alpha = alpha;
        best.value = value;
      }
      ++best.evaluated;
    }
  });
  BruteForceResult result;
  long long evaluated = 0;
  for (const BruteForceResult& p : partial) {
    evaluated += p.evaluated;
    if (p.evaluated > 0 && better(p.value, p.alpha, result)) {
      result.alpha = p.alpha;
      result.value = p.value;
      result.evaluated = 1;
    }
  }
  if (evaluated == 0) {
    throw Error(ErrorCode::kInfeasible, "no feasible binary vector");
  }
  result.evaluated = evaluated;
  return result;
}

BinaryVector SolveGreedy(const SetObjective& objective,
                         const ConstraintSet& constraints, int m) {
  ValidateConstraints(constraints, m);
  BinaryVector alpha(m);
  double value = objective(alpha);
  for (;;) {
    const double violation = Violation(constraints, alpha);
    int pick = -1;
    double pick_value = 0.0;
    for (int j = 0; j < m; ++j) {
      if (alpha[j]) continue;
      const BinaryVector next = alpha.Flipped(j);
      const double v = Violation(constraints, next);
      if (violation > 0.0 ? !(v < violation) : v != 0.0) continue;
      const double candidate = objective(next);
      if (violation == 0.0 && !(candidate > value)) continue;
      if (pick < 0 || candidate > pick_value) {
        pick = j;
        pick_value = candidate;
      }
    }
    if (pick < 0) {
      if (violation > 0.0) {
        throw Error(ErrorCode::kInfeasible,
                    "greedy could not reach a feasible vector");
      }
      return alpha;
    }
    alpha.Set(pick, true);
    value = pick_value;
  }
}

}  // namespace cdsopt
