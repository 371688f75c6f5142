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


#include "support/systems.h"

#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

namespace cdsopt::testing {

namespace {

Matrix RandomMatrix(std::mt19937_64& rng, int rows, int cols, double lo,
                    double hi) {
  Matrix a(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) a(i, j) = Uniform(rng, lo, hi);
  }
  return a;
}

Vector RandomVector(std::mt19937_64& rng, int n, double lo, double hi) {
  return RandomMatrix(rng, n, 1, lo, hi).col(0);
}

std::uint64_t MaskOf(const Vector& alpha) {
  std::uint64_t mask = 0;
  for (int i = 0; i < alpha.size(); ++i) {
    if (alpha[i] == 1.0) {
      mask |= std::uint64_t{1} << i;
    } else if (alpha[i] != 0.0) {
      throw std::logic_error("table system evaluated at a fractional alpha");
    }
  }
  return mask;
}

SystemSpec Skeleton(int n, int m, Vector x0, double horizon) {
  SystemSpec s;
  s.state_dim = n;
  s.decision_dim = m;
  s.initial_state = std::move(x0);
  s.horizon = horizon;
  s.terminal_payoff = [](const Vector&) { return 0.0; };
  s.jac_q_x = [n](const Vector&) -> Vector { return Vector::Zero(n); };
  return s;
}

}  // namespace

double Uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

BinaryVector RandomBinary(std::mt19937_64& rng, int m) {
  BinaryVector v(m);
  for (int i = 0; i < m; ++i) v.Set(i, (rng() & 1u) != 0);
  return v;
}

SystemSpec ScalarLinear(double x0, double alpha_gain, double r_weight,
                        double q_weight, double horizon) {
  SystemSpec s = Skeleton(1, 1, Vector::Constant(1, x0), horizon);
  s.vector_field = [alpha_gain](const Vector& x, const Vector& a, double) {
    return Vector::Constant(1, x[0] + alpha_gain * a[0]);
  };
  s.running_payoff = [r_weight](const Vector& x, const Vector&, double) {
    return r_weight * x[0];
  };
  s.terminal_payoff = [q_weight](const Vector& x) { return q_weight * x[0]; };
  s.jac_f_x = [](const Vector&, const Vector&, double) {
    return Matrix::Identity(1, 1);
  };
  s.jac_r_x = [r_weight](const Vector&, const Vector&, double) {
    return Vector::Constant(1, r_weight);
  };
  s.jac_q_x = [q_weight](const Vector&) { return Vector::Constant(1, q_weight); };
  s.jac_f_alpha = [alpha_gain](const Vector&, const Vector&, double) {
    return Matrix::Constant(1, 1, alpha_gain);
  };
  s.jac_r_alpha = [](const Vector&, const Vector&, double) {
    return Vector::Zero(1);
  };
  return s;
}

SystemSpec BiasSystem(double x0, bool with_alpha_jacobians) {
  SystemSpec s = Skeleton(1, 2, Vector::Constant(1, x0), 1.0);
  s.vector_field = [](const Vector& x, const Vector& a, double) {
    return Vector::Constant(1, x[0] + a[0] * a[0] * a[0] + 2.0 * a[1]);
  };
  s.running_payoff = [](const Vector& x, const Vector&, double) {
    return x[0] * x[0];
  };
  s.jac_f_x = [](const Vector&, const Vector&, double) {
    return Matrix::Identity(1, 1);
  };
  s.jac_r_x = [](const Vector& x, const Vector&, double) {
    return Vector::Constant(1, 2.0 * x[0]);
  };
  if (with_alpha_jacobians) {
    s.jac_f_alpha = [](const Vector&, const Vector& a, double) {
      Matrix j(1, 2);
      j << 3.0 * a[0] * a[0], 2.0;
      return j;
    };
    s.jac_r_alpha = [](const Vector&, const Vector&, double) {
      return Vector::Zero(2);
    };
  }
  return s;
}

SystemSpec ExampleTwoSystem(int m) {
  SystemSpec s = Skeleton(1, m, Vector::Zero(1), 1.0);
  s.vector_field = [](const Vector& x, const Vector& a, double) {
    return Vector::Constant(1, x[0] + a.array().unaryExpr([](double v) {
                                        return std::exp(-v);
                                      }).sum());
  };
  s.running_payoff = [](const Vector& x, const Vector&, double) {
    return x[0];
  };
  s.jac_f_x = [](const Vector&, const Vector&, double) {
    return Matrix::Identity(1, 1);
  };
  s.jac_r_x = [](const Vector&, const Vector&, double) {
    return Vector::Ones(1);
  };
  s.jac_f_alpha = [m](const Vector&, const Vector& a, double) {
    Matrix j(1, m);
    for (int i = 0; i < m; ++i) j(0, i) = -std::exp(-a[i]);
    return j;
  };
  s.jac_r_alpha = [m](const Vector&, const Vector&, double) {
    return Vector::Zero(m);
  };
  return s;
}

SystemSpec CoupledPairSystem(double sign) {
  SystemSpec s = Skeleton(2, 2, Vector::Zero(2), 1.0);
  s.vector_field = [](const Vector& x, const Vector& a, double) {
    Vector f(2);
    f << x[0] + a[0] + 2.0, x[1] + a[1];
    return f;
  };
  s.running_payoff = [sign](const Vector& x, const Vector&, double) {
    const double d = x[0] - x[1];
    return sign * d * d;
  };
  s.jac_f_x = [](const Vector&, const Vector&, double) {
    return Matrix::Identity(2, 2);
  };
  s.jac_r_x = [sign](const Vector& x, const Vector&, double) {
    const double d = 2.0 * sign * (x[0] - x[1]);
    Vector g(2);
    g << d, -d;
    return g;
  };
  s.jac_f_alpha = [](const Vector&, const Vector&, double) {
    return Matrix::Identity(2, 2);
  };
  s.jac_r_alpha = [](const Vector&, const Vector&, double) {
    return Vector::Zero(2);
  };
  return s;
}

SystemSpec RandomPolynomialSystem(std::mt19937_64& rng, int n, int m,
                                  bool with_alpha_jacobians) {
  struct Coeffs {
    Matrix a, b, c, d, g;
    Vector e, w, s, u, v, z, y;
  };
  auto k = std::make_shared<Coeffs>();
  k->a = RandomMatrix(rng, n, n, -0.5, 0.5);
  k->b = RandomMatrix(rng, n, m, -1.0, 1.0);
  k->c = RandomMatrix(rng, n, m, -0.5, 0.5);
  k->d = RandomMatrix(rng, n, m, -0.3, 0.3);
  k->g = RandomMatrix(rng, n, m, -0.5, 0.5);
  k->e = RandomVector(rng, n, -0.2, 0.2);
  k->w = RandomVector(rng, n, -1.0, 1.0);
  k->s = RandomVector(rng, n, -1.0, 1.0);
  k->u = RandomVector(rng, m, -1.0, 1.0);
  k->v = RandomVector(rng, m, -1.0, 1.0);
  k->z = RandomVector(rng, n, -1.0, 1.0);
  k->y = RandomVector(rng, n, -0.5, 0.5);
  SystemSpec s = Skeleton(n, m, RandomVector(rng, n, -1.0, 1.0), 1.0);
  s.vector_field = [k](const Vector& x, const Vector& a, double) -> Vector {
    return k->a * x + k->b * a + k->c * a.cwiseAbs2() +
           x.cwiseProduct(k->d * a) +
           k->e.cwiseProduct(x.cwiseAbs2());
  };
  s.jac_f_x = [k](const Vector& x, const Vector& a, double) -> Matrix {
    Matrix j = k->a;
    j.diagonal() += k->d * a + 2.0 * k->e.cwiseProduct(x);
    return j;
  };
  s.running_payoff = [k](const Vector& x, const Vector& a, double) {
    return k->w.dot(x) + 0.5 * k->s.dot(x.cwiseAbs2()) + k->u.dot(a) +
           k->v.dot(a.cwiseAbs2()) + x.dot(k->g * a);
  };
  s.jac_r_x = [k](const Vector& x, const Vector& a, double) -> Vector {
    return k->w + k->s.cwiseProduct(x) + k->g * a;
  };
  s.terminal_payoff = [k](const Vector& x) {
    return k->z.dot(x) + 0.5 * k->y.dot(x.cwiseAbs2());
  };
  s.jac_q_x = [k](const Vector& x) -> Vector {
    return k->z + k->y.cwiseProduct(x);
  };
  if (with_alpha_jacobians) {
    s.jac_f_alpha = [k](const Vector& x, const Vector& a, double) -> Matrix {
      Matrix j = k->b;
      for (int i = 0; i < a.size(); ++i) {
        j.col(i) += 2.0 * a[i] * k->c.col(i) + x.cwiseProduct(k->d.col(i));
      }
      return j;
    };
    s.jac_r_alpha = [k](const Vector& x, const Vector& a, double) -> Vector {
      return k->u + 2.0 * k->v.cwiseProduct(a) + k->g.transpose() * x;
    };
  }
  return s;
}

SystemSpec RandomTableSystem(std::mt19937_64& rng, int n, int m) {
  struct Coeffs {
    Matrix a, table_f;
    Vector e, w, s, table_r;
  };
  auto k = std::make_shared<Coeffs>();
  const int size = 1 << m;
  k->a = RandomMatrix(rng, n, n, -0.5, 0.5);
  k->e = RandomVector(rng, n, -0.2, 0.2);
  k->table_f = RandomMatrix(rng, n, size, -1.0, 1.0);
  k->w = RandomVector(rng, n, -1.0, 1.0);
  k->s = RandomVector(rng, n, -1.0, 1.0);
  k->table_r = RandomVector(rng, size, -1.0, 1.0);
  SystemSpec s = Skeleton(n, m, RandomVector(rng, n, -1.0, 1.0), 1.0);
  s.relaxable = false;
  s.vector_field = [k](const Vector& x, const Vector& a, double) -> Vector {
    return k->a * x + k->e.cwiseProduct(x.cwiseAbs2()) +
           k->table_f.col(static_cast<Eigen::Index>(MaskOf(a)));
  };
  s.jac_f_x = [k](const Vector& x, const Vector&, double) -> Matrix {
    Matrix j = k->a;
    j.diagonal() += 2.0 * k->e.cwiseProduct(x);
    return j;
  };
  s.running_payoff = [k](const Vector& x, const Vector& a, double) {
    return k->w.dot(x) + 0.5 * k->s.dot(x.cwiseAbs2()) +
           k->table_r[static_cast<Eigen::Index>(MaskOf(a))];
  };
  s.jac_r_x = [k](const Vector& x, const Vector&, double) -> Vector {
    return k->w + k->s.cwiseProduct(x);
  };
  return s;
}

SystemSpec RandomAdditiveSystem(std::mt19937_64& rng, int n, int m) {
  struct Coeffs {
    Matrix a, u, d, g;
    Vector rate, kappa, v, w, s;
  };
  auto k = std::make_shared<Coeffs>();
  k->a = RandomMatrix(rng, n, n, -0.5, 0.5);
  k->u = RandomMatrix(rng, n, m, -1.0, 1.0);
  k->d = RandomMatrix(rng, n, m, -0.3, 0.3);
  k->g = RandomMatrix(rng, n, m, -0.5, 0.5);
  k->rate = RandomVector(rng, m, 0.5, 2.0);
  k->kappa = RandomVector(rng, m, 0.5, 3.0);
  k->v = RandomVector(rng, m, -1.0, 1.0);
  k->w = RandomVector(rng, n, -1.0, 1.0);
  k->s = RandomVector(rng, n, -1.0, 1.0);
  SystemSpec s = Skeleton(n, m, RandomVector(rng, n, -1.0, 1.0), 1.0);
  // Each alpha_i enters through its own nonlinear term only.
  s.vector_field = [k](const Vector& x, const Vector& a, double) -> Vector {
    Vector f = k->a * x;
    for (int i = 0; i < a.size(); ++i) {
      f += std::exp(-k->rate[i] * a[i]) * k->u.col(i) +
           a[i] * a[i] * a[i] * k->d.col(i).cwiseProduct(x);
    }
    return f;
  };
  s.jac_f_x = [k](const Vector&, const Vector& a, double) -> Matrix {
    Matrix j = k->a;
    for (int i = 0; i < a.size(); ++i) {
      j.diagonal() += a[i] * a[i] * a[i] * k->d.col(i);
    }
    return j;
  };
  s.running_payoff = [k](const Vector& x, const Vector& a, double) {
    double r = k->w.dot(x) + 0.5 * k->s.dot(x.cwiseAbs2());
    for (int i = 0; i < a.size(); ++i) {
      r += k->v[i] * std::cos(k->kappa[i] * a[i]) +
           a[i] * a[i] * k->g.col(i).dot(x);
    }
    return r;
  };
  s.jac_r_x = [k](const Vector& x, const Vector& a, double) -> Vector {
    Vector g = k->w + k->s.cwiseProduct(x);
    for (int i = 0; i < a.size(); ++i) g += a[i] * a[i] * k->g.col(i);
    return g;
  };
  return s;
}

SystemSpec RandomConcaveSystem(std::mt19937_64& rng, int n, int m) {
  struct Coeffs {
    Matrix a, b;
    Vector c, delta, mid, kappa, u;
  };
  auto k = std::make_shared<Coeffs>();
  k->a = RandomMatrix(rng, n, n, -0.5, 0.5) - 0.5 * Matrix::Identity(n, n);
  k->b = RandomMatrix(rng, n, m, -1.0, 1.0);
  k->c = RandomVector(rng, n, -1.0, 1.0);
  k->delta = RandomVector(rng, n, 0.2, 1.5);
  k->mid = RandomVector(rng, n, -1.0, 1.0);
  k->kappa = RandomVector(rng, n, 0.0, 0.5);
  k->u = RandomVector(rng, m, -0.5, 0.5);
  SystemSpec s = Skeleton(n, m, RandomVector(rng, n, -1.0, 1.0), 1.0);
  s.vector_field = [k](const Vector& x, const Vector& a, double) -> Vector {
    return k->a * x + k->b * a + k->c;
  };
  s.jac_f_x = [k](const Vector&, const Vector&, double) { return k->a; };
  s.jac_f_alpha = [k](const Vector&, const Vector&, double) { return k->b; };
  s.running_payoff = [k](const Vector& x, const Vector& a, double) {
    return -k->delta.dot((x - k->mid).cwiseAbs2()) + k->u.dot(a);
  };
  s.jac_r_x = [k](const Vector& x, const Vector&, double) -> Vector {
    return -2.0 * k->delta.cwiseProduct(x - k->mid);
  };
  s.jac_r_alpha = [k](const Vector&, const Vector&, double) { return k->u; };
  s.terminal_payoff = [k](const Vector& x) {
    return -k->kappa.dot((x - k->mid).cwiseAbs2());
  };
  s.jac_q_x = [k](const Vector& x) -> Vector {
    return -2.0 * k->kappa.cwiseProduct(x - k->mid);
  };
  return s;
}

TuConstraint RandomIntervalTu(std::mt19937_64& rng, int m,
                              const BinaryVector& feasible) {
  const int intervals = 1 + static_cast<int>(rng() % 4);
  TuConstraint c{IntMatrix::Zero(2 * intervals, m), IntVector(2 * intervals)};
  for (int row = 0; row < intervals; ++row) {
    int lo = static_cast<int>(rng() % m);
    int hi = static_cast<int>(rng() % m);
    if (lo > hi) std::swap(lo, hi);
    int count = 0;
    for (int i = lo; i <= hi; ++i) {
      c.q(row, i) = 1;
      c.q(intervals + row, i) = -1;
      count += feasible[i] ? 1 : 0;
    }
    c.r[row] = count + static_cast<int>(rng() % 3);
    c.r[intervals + row] = -std::max(0, count - static_cast<int>(rng() % 3));
  }
  return c;
}

ConstraintSet RandomConstraints(std::mt19937_64& rng, int m,
                                const BinaryVector& feasible) {
  switch (rng() % 3) {
    case 0: {
      const int count = feasible.Count();
      const int k_min = static_cast<int>(rng() % (count + 1));
      const int k_max = count + static_cast<int>(rng() % (m - count + 1));
      return L0Band{k_min, k_max};
    }
    case 1:
      return RandomIntervalTu(rng, m, feasible);
    default: {
      const Vector weights = RandomVector(rng, m, 0.1, 2.0);
      return KnapsackConstraint{
          weights, weights.dot(feasible.ToReal()) +
                       Uniform(rng, 0.0, 0.5 * weights.sum())};
    }
  }
}

double LinearOptimum(const Vector& entries, const ConstraintSet& constraints,
                     int m) {
  double best = -std::numeric_limits<double>::infinity();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    const BinaryVector a = BinaryVector::FromMask(mask, m);
    if (IsFeasible(constraints, a)) best = std::max(best, entries.dot(a.ToReal()));
  }
  return best;
}

}  // namespace cdsopt::testing
