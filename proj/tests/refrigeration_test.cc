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


#include "cdsopt/refrigeration.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cdsopt/error.h"
#include "cdsopt/surrogate.h"

namespace cdsopt {
namespace {

EtpParams SingleRoom() {
  EtpParams p;
  p.m = 1;
  p.a = Matrix::Constant(1, 1, 1.0);
  p.b = Vector::Constant(1, 2.0);
  p.theta_ambient = Vector::Constant(1, 19.5);
  p.theta_lo = Vector::Constant(1, 0.0);
  p.theta_hi = Vector::Constant(1, 4.0);
  p.delta = Vector::Constant(1, 1.0);
  p.c = Vector::Constant(1, 10.0);
  p.x0 = Vector::Constant(1, 4.0);
  return p;
}

TEST(PenaltyTest, BandValues) {
  EXPECT_EQ(Penalty(2.0, 0.0, 4.0, 1.0), 0.0);
  EXPECT_EQ(Penalty(0.0, 0.0, 4.0, 1.0), 8.0);
  EXPECT_EQ(Penalty(4.0, 0.0, 4.0, 1.0), 8.0);
  EXPECT_EQ(Penalty(1.0, 0.0, 4.0, 0.0), 0.0);
}

TEST(EtpSystemTest, SingleRoomSlope) {
  const SystemSpec s = BuildEtpSystem(SingleRoom(), 0.25);
  EXPECT_DOUBLE_EQ(s.vector_field(s.initial_state, Vector::Ones(1), 0.0)[0],
                   13.5);
  EXPECT_EQ(s.horizon, 0.25);
  EXPECT_DOUBLE_EQ(s.running_payoff(Vector::Constant(1, 0.0), Vector::Ones(1),
                                    0.0),
                   -8.0);
}

TEST(EtpSystemTest, UniformAmbientIsEquilibrium) {
  EtpParams p = DefaultFleet(10, 3);
  p.x0 = p.theta_ambient;
  const SystemSpec s = BuildEtpSystem(p, 0.25);
  EXPECT_LT(s.vector_field(p.x0, Vector::Zero(10), 0.0).cwiseAbs().maxCoeff(),
            1e-12);
}

TEST(EtpSystemTest, CompactFormMatchesSummation) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 6);
    EtpParams p;
    p.m = m;
    p.a = Matrix::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) p.a(i, j) = u(rng) < 0.5 ? u(rng) : 0.0;
    }
    p.b = Vector::Constant(m, 1.0) + Vector::Random(m).cwiseAbs();
    p.theta_ambient = 20.0 * Vector::Ones(m) + Vector::Random(m);
    p.theta_lo = Vector::Zero(m);
    p.theta_hi = Vector::Constant(m, 4.0);
    p.delta = Vector::Ones(m);
    p.c = Vector::Constant(m, 10.0);
    p.x0 = 4.0 * Vector::Random(m);
    const SystemSpec s = BuildEtpSystem(p, 0.25);
    Vector alpha(m);
    for (int i = 0; i < m; ++i) alpha[i] = u(rng);
    const Vector x = 5.0 * Vector::Random(m);
    const Vector f = s.vector_field(x, alpha, 0.0);
    for (int i = 0; i < m; ++i) {
      double expect = -p.a(i, i) * (x[i] - p.theta_ambient[i]) -
                      p.b[i] * alpha[i];
      for (int j = 0; j < m; ++j) {
        if (j != i) expect -= p.a(i, j) * (x[i] - x[j]);
      }
      EXPECT_NEAR(f[i], expect, 1e-12);
    }
  }
}

TEST(EtpParamsTest, InvalidBandNamesField) {
  EtpParams p = SingleRoom();
  p.theta_lo[0] = 5.0;
  try {
    p.Validate();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidParams);
    EXPECT_NE(std::string(e.what()).find("theta_lo"), std::string::npos);
  }
  p = SingleRoom();
  p.a(0, 0) = -1.0;
  EXPECT_THROW(p.Validate(), Error);
}

TEST(DefaultFleetTest, DeterministicUnderSeed) {
  const EtpParams a = DefaultFleet(30, 5);
  const EtpParams b = DefaultFleet(30, 5);
  EXPECT_EQ(a.a, b.a);
  EXPECT_EQ(a.b, b.b);
  EXPECT_EQ(a.x0, b.x0);
  EXPECT_NE(DefaultFleet(30, 6).b, a.b);
  EXPECT_THROW(DefaultFleet(15, 1), Error);
}

TEST(DefaultFleetTest, PublishedConstants) {
  const Scenario s = CaseOneScenario(20, 1);
  const EtpParams& p = s.params;
  EXPECT_TRUE((p.theta_ambient.array() == 19.5).all());
  EXPECT_TRUE((p.theta_lo.array() == 0.0).all());
  EXPECT_TRUE((p.theta_hi.array() == 4.0).all());
  EXPECT_TRUE((p.delta.array() == 1.0).all());
  EXPECT_TRUE((p.c.array() == 10.0).all());
  EXPECT_EQ(s.num_steps, 32);
  EXPECT_EQ(s.step_minutes, 15.0);
  const auto& band = std::get<TargetBandCase>(s.problem);
  EXPECT_EQ(band.y_hi[7], 100.0);
  EXPECT_EQ(band.y_hi[8], 110.0);
  EXPECT_EQ(band.y_hi[15], 110.0);
  EXPECT_EQ(band.y_hi[16], 100.0);
}

TEST(DefaultFleetTest, PerturbationWithinTenPercent) {
  const EtpParams nominal = DefaultFleet(10, 1);
  const EtpParams fleet = DefaultFleet(50, 9);
  for (int block = 0; block < 5; ++block) {
    const int o = 10 * block;
    for (int i = 0; i < 10; ++i) {
      EXPECT_GE(fleet.b[o + i], 0.9 * nominal.b[i] - 1e-12);
      EXPECT_LE(fleet.b[o + i], 1.1 * nominal.b[i] + 1e-12);
      for (int j = 0; j < 10; ++j) {
        const double n = nominal.a(i, j);
        const double v = fleet.a(o + i, o + j);
        if (n == 0.0) {
          EXPECT_EQ(v, 0.0);
        } else {
          EXPECT_GE(v, 0.9 * n - 1e-12);
          EXPECT_LE(v, 1.1 * n + 1e-12);
        }
      }
    }
  }
}

TEST(DefaultFleetTest, AlternatingControlStaysInEnvelope) {
  const Scenario s = CaseOneScenario(20, 1);
  Vector x = s.params.x0;
  for (int k = 0; k < s.num_steps; ++k) {
    BinaryVector a(20);
    for (int i = 0; i < 20; ++i) a.Set(i, (i + k) % 2 == 0);
    const SystemSpec spec = StepSystem(s, x);
    x = Integrate(spec, a, TimeGrid(spec.horizon, 50)).Final();
    EXPECT_TRUE(x.allFinite());
    EXPECT_GE(x.minCoeff(), -5.0);
    EXPECT_LE(x.maxCoeff(), 25.0);
  }
}

TEST(TransientTest, OnRecoversBaseModel) {
  const EtpParams p = DefaultFleet(10, 1);
  const SystemSpec base = BuildEtpSystem(p, 0.25);
  const SystemSpec tr = BuildTransientSystem(p, Vector::Constant(10, 100.0),
                                             DefaultTransientMembers(10), 0.25);
  const Vector ones = Vector::Ones(10);
  for (double t : {0.0, 0.1, 0.25}) {
    EXPECT_LT((tr.vector_field(p.x0, ones, t) - base.vector_field(p.x0, ones, t))
                  .cwiseAbs()
                  .maxCoeff(),
              1e-12);
  }
  const Vector zero = Vector::Zero(10);
  const Vector late = tr.vector_field(p.x0, zero, 1.0) -
                      base.vector_field(p.x0, zero, 1.0);
  EXPECT_LT(late.cwiseAbs().maxCoeff(), 1e-30);
  EXPECT_THROW(BuildTransientSystem(p, Vector::Constant(10, 100.0), {10}, 0.25),
               Error);
}

// Closed forms for a member i with costate lambda_i on the step grid:
//   standard:    -b_i xi_i int t e^{-xi_i (1 - bar_i) t} lambda_i dt
//   nonstandard: -b_i int (1 - e^{-xi_i t}) lambda_i dt
TEST(TransientTest, DerivativesMatchClosedForms) {
  const Scenario sc = TransientScenario(10, 1);
  const SystemSpec s = StepSystem(sc, sc.params.x0);
  const TimeGrid grid(s.horizon, 2001);
  const double xi = 100.0;
  for (const BinaryVector& bar :
       {BinaryVector(10), BinaryVector::Parse("1011001110")}) {
    const Linearization lin = Linearize(s, bar, grid, Scheme::kRk4);
    const Gradient gs = StandardDerivative(s, lin);
    const Gradient gn = NonstandardDerivative(s, lin);
    for (int i : DefaultTransientMembers(10)) {
      double is = 0.0;
      double in = 0.0;
      for (int k = 0; k < grid.num_points(); ++k) {
        const double t = grid.Time(k);
        const double w = grid.Weight(k) * lin.adjoint.Costate(k)[i];
        is += w * t * std::exp(-xi * (1.0 - bar[i]) * t);
        in += w * (1.0 - std::exp(-xi * t));
      }
      is *= -sc.params.b[i] * xi;
      in *= -sc.params.b[i];
      EXPECT_NEAR(gs.entries[i], is, 1e-3 * std::max(1.0, std::abs(is)))
          << "unit " << i << " at " << bar.ToString();
      EXPECT_NEAR(gn.entries[i], in, 1e-3 * std::max(1.0, std::abs(in)))
          << "unit " << i << " at " << bar.ToString();
    }
  }
}

TEST(StepConstraintsTest, BandMapsToSolverForms) {
  const Scenario s = CaseOneScenario(20, 1);
  EXPECT_TRUE(std::holds_alternative<TuConstraint>(
      StepConstraints(s, 8, SolverChoice::kTu)));
  const auto band = std::get<L0Band>(StepConstraints(s, 8, SolverChoice::kL0));
  EXPECT_EQ(band.k_min, 0);
  EXPECT_EQ(band.k_max, 11);
  const auto ks =
      std::get<KnapsackConstraint>(StepConstraints(s, 0, SolverChoice::kKnapsack));
  EXPECT_EQ(ks.capacity, 100.0);
  const Scenario two = CaseTwoScenario(20, 1);
  EXPECT_THROW(StepConstraints(two, 0, SolverChoice::kL0), Error);
  const auto tu = std::get<TuConstraint>(StepConstraints(two, 8, SolverChoice::kTu));
  EXPECT_EQ(tu.r[tu.r.size() - 1], 5);
  EXPECT_EQ(std::get<TuConstraint>(StepConstraints(two, 0, SolverChoice::kTu))
                .r[tu.r.size() - 1],
            4);
}

TEST(RecedingHorizonTest, ZeroWeightsCertifyEveryStep) {
  Scenario s = CaseOneScenario(10, 2);
  s.num_steps = 4;
  s.params.delta.setZero();
  auto& band = std::get<TargetBandCase>(s.problem);
  band.y_lo = band.y_lo.head(4).eval();
  band.y_hi = band.y_hi.head(4).eval();
  HorizonOptions o;
  o.grid_points = 20;
  for (const StepResult& r : RunRecedingHorizon(s, o)) {
    EXPECT_EQ(r.payoff, 0.0);
    EXPECT_TRUE(r.optimal);
  }
}

TEST(RecedingHorizonTest, StateCarriesOverExactly) {
  Scenario s = CaseOneScenario(10, 2);
  HorizonOptions o;
  o.grid_points = 30;
  std::vector<Vector> starts;
  o.observer = [&](const StepContext& ctx) {
    starts.push_back(ctx.spec->initial_state);
  };
  const std::vector<StepResult> results = RunRecedingHorizon(s, o);
  ASSERT_EQ(results.size(), 32u);
  EXPECT_EQ(starts[0], s.params.x0);
  for (std::size_t k = 1; k < results.size(); ++k) {
    EXPECT_EQ(starts[k], results[k - 1].temperatures_end);
  }
  for (const StepResult& r : results) {
    EXPECT_DOUBLE_EQ(r.power_kw, s.params.c.dot(r.alpha.ToReal()));
    EXPECT_GE(r.rho_post, 0.0);
    EXPECT_LE(r.rho_post, 1.0);
  }
}

TEST(RecedingHorizonTest, CaseOneCertifiedAgainstOracle) {
  const Scenario s = CaseOneScenario(20, 1);
  HorizonOptions o;
  int checked = 0;
  o.observer = [&](const StepContext& ctx) {
    const PayoffOracle oracle =
        MakePayoffOracle(*ctx.spec, *ctx.grid, Scheme::kEuler);
    ASSERT_TRUE(oracle.quadratic);
    const double opt = SolveBruteForce(oracle.payoff, *ctx.constraints, 20).value;
    const double zero = oracle.payoff(BinaryVector(20));
    const CertifiedSolution& c = *ctx.certificate;
    EXPECT_GT(c.rho_post, 0.0);
    EXPECT_LE(c.rho_post * (opt - c.base_payoff),
              c.NormalizedPostPayoff() + 1e-6);
    EXPECT_GE((c.post_payoff - zero) / (opt - zero), c.rho_post);
    ++checked;
  };
  RunRecedingHorizon(s, o);
  EXPECT_EQ(checked, 32);
}

TEST(RecedingHorizonTest, CaseTwoRowsHoldEveryStep) {
  const Scenario s = CaseTwoScenario(20, 1);
  HorizonOptions o;
  const std::vector<StepResult> results = RunRecedingHorizon(s, o);
  for (const StepResult& r : results) {
    EXPECT_TRUE(IsFeasible(StepConstraints(s, r.step - 1, SolverChoice::kTu),
                           r.alpha))
        << "step " << r.step;
  }
}

TEST(RecedingHorizonTest, InfeasibleStepReportsIndex) {
  Scenario s = CaseOneScenario(10, 1);
  auto& band = std::get<TargetBandCase>(s.problem);
  band.y_lo[2] = 35.0;
  band.y_hi[2] = 38.0;
  HorizonOptions o;
  o.solver = SolverChoice::kL0;
  o.grid_points = 10;
  try {
    RunRecedingHorizon(s, o);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInfeasible);
    ASSERT_TRUE(e.index().has_value());
    EXPECT_EQ(*e.index(), 3);
  }
}

TEST(PolicyTest, LinearizationPoints) {
  const BinaryVector prev = BinaryVector::Parse("1010");
  EXPECT_EQ(LinearizationPoint(LinearizationPolicy::kZeros, 4, 3, prev, 1),
            BinaryVector(4));
  EXPECT_EQ(LinearizationPoint(LinearizationPolicy::kWarmStart, 4, 3, prev, 1),
            prev);
  EXPECT_EQ(LinearizationPoint(LinearizationPolicy::kRandom, 4, 3, prev, 1),
            LinearizationPoint(LinearizationPolicy::kRandom, 4, 3, prev, 1));
  EXPECT_EQ(ParseLinearizationPolicy("warm"), LinearizationPolicy::kWarmStart);
  EXPECT_EQ(ParseSolverChoice("knapsack"), SolverChoice::kKnapsack);
  EXPECT_THROW(ParseSolverChoice("simplex"), Error);
}

}  // namespace
}  // namespace cdsopt
