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


#include "cdsopt/surrogate.h"

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>
#include <utility>
#include <vector>

#include "cdsopt/parallel.h"

namespace cdsopt {

QuadraticSurrogate QuadraticSurrogate::Fit(const SetObjective& payoff, int m) {
  std::vector<std::pair<int, int>> points;
  points.emplace_back(-1, -1);
  for (int i = 0; i < m; ++i) points.emplace_back(i, -1);
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) points.emplace_back(i, j);
  }
  std::vector<double> values(points.size());
  ParallelChunks(0, static_cast<std::int64_t>(points.size()),
                 [&](std::int64_t lo, std::int64_t hi, int) {
                   for (std::int64_t p = lo; p < hi; ++p) {
                     BinaryVector a(m);
                     if (points[p].first >= 0) a.Set(points[p].first, true);
                     if (points[p].second >= 0) a.Set(points[p].second, true);
                     values[p] = payoff(a);
                   }
                 });
  QuadraticSurrogate model;
  model.constant_ = values[0];
  model.linear_.resize(m);
  for (int i = 0; i < m; ++i) model.linear_[i] = values[1 + i] - values[0];
  model.pair_ = Matrix::Zero(m, m);
  std::size_t p = 1 + m;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j, ++p) {
      model.pair_(i, j) = values[p] - values[1 + i] - values[1 + j] + values[0];
    }
  }
  return model;
}

double QuadraticSurrogate::operator()(const BinaryVector& alpha) const {
  int on[64];
  int count = 0;
  double value = constant_;
  for (int i = 0; i < size(); ++i) {
    if (!alpha[i]) continue;
    value += linear_[i];
    for (int k = 0; k < count; ++k) value += pair_(on[k], i);
    if (count < 64) on[count++] = i;
  }
  return value;
}

double QuadraticSurrogate::ValidationError(const SetObjective& payoff,
                                           int samples,
                                           std::uint64_t seed) const {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    BinaryVector a(size());
    for (int i = 0; i < size(); ++i) a.Set(i, coin(rng));
    const double exact = payoff(a);
    worst = std::max(worst, std::abs((*this)(a)-exact) / (1.0 + std::abs(exact)));
  }
  return worst;
}

PayoffOracle MakePayoffOracle(const SystemSpec& spec, const TimeGrid& grid,
                              Scheme scheme, std::uint64_t seed) {
  SetObjective direct = [spec, grid, scheme](const BinaryVector& a) {
    return Payoff(spec, a, grid, scheme);
  };
  if (spec.decision_dim > 64) return {direct, false};
  auto model = std::make_shared<QuadraticSurrogate>(
      QuadraticSurrogate::Fit(direct, spec.decision_dim));
  if (model->ValidationError(direct, 64, seed) > 1e-9) return {direct, false};
  return {[model](const BinaryVector& a) { return (*model)(a); }, true};
}

}  // namespace cdsopt
