// Copyright 2026 The zovr Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <optional>
#include <vector>

#include <gtest/gtest.h>

#include "test_support.h"
#include "zovr/estimators.h"
#include "zovr/least_squares.h"
#include "zovr/lr_schedule.h"
#include "zovr/memory_model.h"
#include "zovr/optimizers.h"
#include "zovr/rng.h"
#include "zovr/run.h"
#include "zovr/seeds.h"

namespace zovr {
namespace {

using testing::CountingObjective;
using testing::NanObjective;
using testing::SquareObjective;

ParamVector random_theta(std::size_t d, std::uint64_t seed, double scale = 1) {
  ParamVector theta(d);
  NormalStream stream(seed, 78);
  for (double& v : theta) v = scale * stream.next();
  return theta;
}

void expect_near_all(std::span<const double> a, std::span<const double> b,
                     double tol) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_NEAR(a[i], b[i], tol * std::max(1.0, std::abs(b[i]))) << i;
  }
}

std::vector<PerturbationSeed> offsets(std::uint64_t seed,
                                      const Minibatch& batch) {
  std::vector<PerturbationSeed> out;
  for (std::size_t i : batch.indices) out.push_back({seed, i});
  return out;
}

TEST(MezoStep, ZeroLearningRateOnlyRoundsTheta) {
  const auto ls = make_least_squares(50, 6, 0.1, 1);
  const ParamVector original = random_theta(6, 1);
  ParamVector theta = original;
  const StepReport r = mezo_step(ls, theta, Minibatch{{1, 2, 3}}, {4, 0}, 0.0,
                                 {});
  expect_near_all(theta.view(), original.view(), 1e-12);
  EXPECT_EQ(r.queries, 6u);
  EXPECT_EQ(r.kind, StepKind::kMinibatch);
}

TEST(MezoStep, SquareFromOneMovesByTwoAlongZ) {
  SquareObjective obj({1.0, 1.0});
  ParamVector theta(1, 1.0);
  const PerturbationSeed seed{17, 0};
  const double z = regenerate_z(seed, 1)[0];
  mezo_step(obj, theta, full_batch(2), seed, 0.1, {1e-3, 1});
  // θ' = 1 − η·(2θ·z)·z; with z = 1 this is 0.8.
  EXPECT_NEAR(theta[0], 1.0 - 0.1 * 2.0 * z * z, 1e-9);
}

TEST(MezoStep, LeastSquaresThousandStepsStayFinite) {
  const auto ls = make_least_squares(1000, 100, 0.01, 1);
  ParamVector theta(100, 0.0);
  const double f0 = ls.full_loss(theta.view());
  for (std::uint64_t t = 0; t < 1000; ++t) {
    const Minibatch batch = sample_minibatch(
        1000, 32, SamplingMode::kWithoutReplacement, seeds::derive(3, t, seeds::Purpose::kBatch));
    mezo_step(ls, theta, batch, seeds::perturbation(3, t), 1e-3, {1e-3, 1});
  }
  EXPECT_TRUE(theta.all_finite());
  EXPECT_LT(ls.full_loss(theta.view()), f0);
}

TEST(MezoStep, NonFiniteLossPropagates) {
  NanObjective obj(3);
  ParamVector theta(3, 0.0);
  EXPECT_THROW(mezo_step(obj, theta, Minibatch{{0}}, {1, 0}, 0.1, {}),
               NonFiniteLoss);
}

TEST(MezoSvrgStep, AnchorStepWithZeroRateRefreshesAnchorOnly) {
  const auto ls = make_least_squares(20, 5, 0.1, 2);
  MezoSvrgConfig cfg;
  cfg.eta1 = 0.0;
  cfg.q = 3;
  const ParamVector original = random_theta(5, 2);
  ParamVector theta = original;
  std::optional<SvrgAnchor> anchor;
  const StepReport r =
      mezo_svrg_step(ls, theta, anchor, full_batch(20), {5, 0}, cfg, 6);
  ASSERT_TRUE(anchor.has_value());
  EXPECT_EQ(anchor->step_created, 6u);
  EXPECT_TRUE(bitwise_equal(anchor->theta_bar.view(), theta.view()));
  expect_near_all(theta.view(), original.view(), 1e-12);
  EXPECT_EQ(r.kind, StepKind::kFullbatch);
  EXPECT_EQ(r.queries, 40u);
  EXPECT_EQ(r.coeffs.size(), 1u);
}

TEST(MezoSvrgStep, MinibatchTermsCancelAtAnchor) {
  const auto ls = make_least_squares(40, 8, 0.1, 3);
  MezoSvrgConfig cfg;
  cfg.q = 2;
  cfg.eta1 = 0.0;  // leave θ = θ̄ after the anchor step
  cfg.eta2 = 0.05;
  ParamVector theta = random_theta(8, 3);
  std::optional<SvrgAnchor> anchor;
  mezo_svrg_step(ls, theta, anchor, full_batch(40), {1, 0}, cfg, 0);
  // Make θ̄ exactly θ so only the perturbation rounding remains.
  std::copy(theta.begin(), theta.end(), anchor->theta_bar.begin());
  const ParamVector before = theta;
  const StepReport r =
      mezo_svrg_step(ls, theta, anchor, Minibatch{{3, 9, 27}}, {2, 0}, cfg, 1);
  EXPECT_EQ(r.kind, StepKind::kMinibatch);
  EXPECT_EQ(r.queries, 12u);
  ASSERT_EQ(r.coeffs.size(), 2u);
  EXPECT_NEAR(r.coeffs[0], r.coeffs[1], 1e-9 * std::abs(r.coeffs[0]));

  const DenseVector g = materialize(anchor->g);
  double err = 0.0;
  for (std::size_t k = 0; k < 8; ++k) {
    const double expected = before[k] - cfg.eta2 * g[k];
    err += (theta[k] - expected) * (theta[k] - expected);
  }
  EXPECT_LE(std::sqrt(err), 1e-10 * norm2(before.view()));
}

TEST(MezoSvrgStep, MinibatchStepWithoutAnchorIsContractViolation) {
  const auto ls = make_least_squares(20, 5, 0.1, 4);
  ParamVector theta(5, 0.0);
  std::optional<SvrgAnchor> anchor;
  EXPECT_THROW(mezo_svrg_step(ls, theta, anchor, Minibatch{{1}}, {1, 0},
                              MezoSvrgConfig{}, 1),
               ContractViolation);
}

TEST(MezoSvrgStep, MinibatchUpdateMatchesThreeTermComposition) {
  const auto ls = make_least_squares(30, 6, 0.1, 5);
  MezoSvrgConfig cfg;
  cfg.q = 4;
  ParamVector theta = random_theta(6, 5);
  std::optional<SvrgAnchor> anchor;
  mezo_svrg_step(ls, theta, anchor, full_batch(30), {9, 0}, cfg, 0);
  const ParamVector before = theta;
  const ParamVector bar = anchor->theta_bar;
  const Minibatch batch{{0, 4, 8, 12}};
  mezo_svrg_step(ls, theta, anchor, batch, {10, 0}, cfg, 1);

  ParamVector at_theta = before, at_bar = bar;
  const auto c1 = spsa_batch_shared(ls, at_theta, batch, {10, 0}, cfg.spsa);
  const auto c2 = spsa_batch_shared(ls, at_bar, batch, {10, 0}, cfg.spsa);
  const DenseVector z = regenerate_z({10, 0}, 6);
  const DenseVector g = materialize(anchor->g);
  for (std::size_t k = 0; k < 6; ++k) {
    const double expected =
        before[k] - cfg.eta2 * (c1.coeff() * z[k] - c2.coeff() * z[k] + g[k]);
    EXPECT_NEAR(theta[k], expected, 1e-12);
  }
}

TEST(MezoSvrgStep, AnchorRefreshesExactlyAtMultiplesOfQ) {
  const auto ls = make_least_squares(24, 4, 0.1, 6);
  MezoSvrgConfig cfg;
  cfg.q = 3;
  cfg.b = 4;
  ParamVector theta(4, 0.0);
  std::optional<SvrgAnchor> anchor;
  for (std::size_t t = 0; t < 10; ++t) {
    const Minibatch batch =
        t % cfg.q == 0 ? full_batch(24)
                       : sample_minibatch(24, 4, SamplingMode::kWithoutReplacement, t);
    const StepReport r = mezo_svrg_step(ls, theta, anchor, batch, {t, 0}, cfg, t);
    EXPECT_EQ(r.kind == StepKind::kFullbatch, t % 3 == 0) << t;
    EXPECT_EQ(anchor->step_created, t - t % 3) << t;
    EXPECT_EQ(r.queries, t % 3 == 0 ? 48u : 16u);
  }
}

TEST(ZoSvrgStep, AtAnchorTheUpdateIsTheAnchorEstimate) {
  const auto ls = make_least_squares(16, 5, 0.1, 7);
  const ParamVector start = random_theta(5, 7);
  std::optional<ZoSvrgAnchor> anchor;
  const Minibatch all = full_batch(16);
  const std::size_t q_refresh =
      zo_svrg_refresh(ls, start, anchor, all, offsets(3, all), {}, 0);
  EXPECT_EQ(q_refresh, 32u);
  const DenseVector g = anchor->g;
  ParamVector theta = anchor->theta_bar;
  const Minibatch batch{{2, 5}};
  const StepReport r =
      zo_svrg_step(ls, theta, *anchor, batch, offsets(4, batch), 0.1, {});
  EXPECT_EQ(r.queries, 8u);
  for (std::size_t k = 0; k < 5; ++k) {
    EXPECT_NEAR(theta[k], start[k] - 0.1 * g[k], 1e-10);
  }
}

TEST(ZoSvrgStep, FullBatchWithAnchorSeedsGivesEstimateAtTheta) {
  const auto ls = make_least_squares(10, 4, 0.1, 8);
  const Minibatch all = full_batch(10);
  const auto seeds = offsets(6, all);
  std::optional<ZoSvrgAnchor> anchor;
  zo_svrg_refresh(ls, random_theta(4, 80), anchor, all, seeds, {}, 0);
  const ParamVector before = random_theta(4, 81);
  ParamVector theta = before, probe = before;
  zo_svrg_step(ls, theta, *anchor, all, seeds, 0.2, {});
  const DenseVector direct = spsa_batch_avg(ls, probe, all, seeds, {});
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_NEAR(theta[k], before[k] - 0.2 * direct[k], 1e-9);
  }
}

TEST(ZoSvrgStep, BlendMatchesIndependentEstimators) {
  const auto ls = make_least_squares(8, 5, 0.1, 9);
  const Minibatch all = full_batch(8);
  const ParamVector bar = random_theta(5, 90);
  std::optional<ZoSvrgAnchor> anchor;
  zo_svrg_refresh(ls, bar, anchor, all, offsets(1, all), {}, 0);
  const ParamVector before = random_theta(5, 91);
  const Minibatch batch{{1, 6, 7}};
  const auto seeds = offsets(2, batch);
  ParamVector theta = before;
  zo_svrg_step(ls, theta, *anchor, batch, seeds, 0.05, {});

  ParamVector t1 = before, t2 = bar, t3 = bar;
  const DenseVector g_hat = spsa_batch_avg(ls, t1, batch, seeds, {});
  const DenseVector g_bar = spsa_batch_avg(ls, t2, batch, seeds, {});
  const DenseVector g_full = spsa_batch_avg(ls, t3, all, offsets(1, all), {});
  for (std::size_t k = 0; k < 5; ++k) {
    EXPECT_NEAR(theta[k], before[k] - 0.05 * (g_hat[k] - g_bar[k] + g_full[k]),
                1e-10);
  }
}

TEST(FoSgdStep, HandComputedLeastSquaresStep) {
  // f₀(w) = (w₀ + 2w₁ − 1)², f₁(w) = (3w₀ − w₁ − 2)².
  LeastSquaresProblem ls(2, 2, {1, 2, 3, -1}, {1, 2});
  ParamVector theta(std::vector<double>{0.5, -0.5});
  const StepReport r = fo_sgd_step(ls, theta, full_batch(2), 0.1);
  // r₀ = −1.5, r₁ = 0; ∇f = ½·2·r₀·(1, 2) = (−1.5, −3).
  EXPECT_NEAR(theta[0], 0.5 + 0.15, 1e-15);
  EXPECT_NEAR(theta[1], -0.5 + 0.3, 1e-15);
  EXPECT_EQ(r.queries, 2u);
  EXPECT_EQ(r.backward, 2u);
  EXPECT_EQ(r.kind, StepKind::kFo);
  EXPECT_NEAR(r.loss_before, 0.5 * 2.25, 1e-15);
}

TEST(FoSgdStep, ZeroLearningRateLeavesThetaBitIdentical) {
  const auto ls = make_least_squares(20, 3, 0.1, 10);
  const ParamVector original = random_theta(3, 10);
  ParamVector theta = original;
  fo_sgd_step(ls, theta, Minibatch{{1, 2}}, 0.0);
  EXPECT_TRUE(bitwise_equal(theta.view(), original.view()));
}

TEST(FoSgdStep, FullBatchConvergesToNormalEquationOptimum) {
  const auto ls = make_least_squares(200, 10, 0.1, 11);
  ParamVector theta(10, 0.0);
  const Minibatch all = full_batch(200);
  double gap = 0.0;
  std::size_t steps = 0;
  for (; steps < 5000; ++steps) {
    gap = (ls.full_loss(theta.view()) - ls.f_star()) / ls.f_star();
    if (gap < 1e-6) break;
    fo_sgd_step(ls, theta, all, 0.1);
  }
  EXPECT_LT(gap, 1e-6);
  EXPECT_LE(steps, 5000u);
}

TEST(FoSgdStep, ObjectiveWithoutGradientIsUnsupported) {
  testing::ConstantObjective obj(2, {1.0});
  ParamVector theta(2, 0.0);
  EXPECT_THROW(fo_sgd_step(obj, theta, Minibatch{{0}}, 0.1),
               UnsupportedOperation);
}

TEST(LrSchedule, FlatLossesKeepRates) {
  LrScheduleState s;
  s.window = 2;
  s.loss_history = {1.0, 1.0, 1.0, 1.0};
  EXPECT_EQ(lr_schedule_update(s, 1e-3, 1e-4), std::make_pair(1e-3, 1e-4));
}

TEST(LrSchedule, TenPercentRiseAnnealsBothByAlpha) {
  LrScheduleState s;
  s.window = 2;
  s.loss_history = {1.0, 1.0, 1.1, 1.1};
  const auto [e1, e2] = lr_schedule_update(s, 1e-3, 1e-4);
  EXPECT_DOUBLE_EQ(e1, 1e-3 / 5);
  EXPECT_DOUBLE_EQ(e2, 1e-4 / 5);
}

TEST(LrSchedule, DegenerateInputsAreNoOps) {
  LrScheduleState s;
  s.window = 2;
  s.loss_history = {0.0, 0.0, 1.0, 1.0};
  EXPECT_EQ(lr_schedule_update(s, 1.0, 0.5), std::make_pair(1.0, 0.5));
  s.loss_history = {1.0, 5.0, 9.0};
  EXPECT_EQ(lr_schedule_update(s, 1.0, 0.5), std::make_pair(1.0, 0.5));
  s.loss_history = {1.0, 1.0, NAN, 1.0};
  EXPECT_EQ(lr_schedule_update(s, 1.0, 0.5), std::make_pair(1.0, 0.5));
}

TEST(LrSchedule, UsesOnlyTheLastTwoWindows) {
  LrScheduleState s;
  s.window = 1;
  s.loss_history = {100.0, 1.0, 1.2};
  EXPECT_DOUBLE_EQ(lr_schedule_update(s, 1.0, 1.0).first, 0.2);
}

TEST(LrSchedule, ValidateRejectsBadParameters) {
  LrScheduleState s;
  s.kappa = 1.0;
  EXPECT_THROW(s.validate(), ContractViolation);
  s = {};
  s.alpha = 0.5;
  EXPECT_THROW(s.validate(), ContractViolation);
  s = {};
  s.window = 0;
  EXPECT_THROW(s.validate(), ContractViolation);
}

TEST(MezoSvrgConfig, ValidateRejectsInconsistentSettings) {
  MezoSvrgConfig cfg;
  cfg.b = 8;
  EXPECT_NO_THROW(cfg.validate(8));
  cfg.q = 0;
  EXPECT_THROW(cfg.validate(8), ContractViolation);
  cfg = {};
  cfg.b = 9;
  EXPECT_THROW(cfg.validate(8), ContractViolation);
  cfg = {};
  cfg.b = 4;
  cfg.anchor_batch = 9;
  EXPECT_THROW(cfg.validate(8), ContractViolation);
  cfg = {};
  cfg.b = 4;
  cfg.eta1 = -1.0;
  EXPECT_THROW(cfg.validate(8), ContractViolation);
  EXPECT_EQ(MezoSvrgConfig{}.resolved_anchor_batch(77), 77u);
}

OptimizerSpec spec_of(OptimizerId id, std::size_t b, std::size_t q = 2) {
  OptimizerSpec spec{id, {}};
  spec.config.b = b;
  spec.config.q = q;
  return spec;
}

TEST(Run, QueryBudgetOfTwoBGivesOneMezoStep) {
  const auto ls = make_least_squares(100, 5, 0.1, 12);
  const std::vector<double> theta0(5, 0.0);
  const RunResult r =
      run(ls, theta0, spec_of(OptimizerId::kMezo, 16), {0, 32}, {});
  EXPECT_EQ(r.steps, 1u);
  EXPECT_EQ(r.total_queries, 32u);
  EXPECT_EQ(r.records.size(), 1u);
}

TEST(Run, MezoSvrgQueryCountMatchesHandCount) {
  const auto ls = make_least_squares(8, 3, 0.1, 13);
  CountingObjective counted(ls);
  const std::vector<double> theta0(3, 0.0);
  RunOptions options;
  options.eval_every = 1000;
  const RunResult r =
      run(counted, theta0, spec_of(OptimizerId::kMezoSvrg, 2), {4, 0}, options);
  // Two anchor steps of 2·8 and two minibatch steps of 4·2.
  EXPECT_EQ(r.total_queries, 48u);
  EXPECT_EQ(r.records.back().cumulative_queries, 48u);
  // Loss evaluations at θ₀ and after the last step are not queries.
  EXPECT_EQ(counted.calls(), 48u + 2 * 8u);
}

TEST(Run, StepCostFollowsTheBranch) {
  const OptimizerSpec svrg = spec_of(OptimizerId::kMezoSvrg, 4, 3);
  EXPECT_EQ(step_cost(svrg, 50, 0), 100u);
  EXPECT_EQ(step_cost(svrg, 50, 1), 16u);
  EXPECT_EQ(step_cost(spec_of(OptimizerId::kMezo, 4), 50, 7), 8u);
  EXPECT_EQ(step_cost(spec_of(OptimizerId::kZoSvrg, 4, 3), 50, 3), 116u);
  EXPECT_EQ(step_cost(spec_of(OptimizerId::kFoSgd, 4), 50, 3), 4u);
}

TEST(Run, SameSeedIsBitIdentical) {
  const auto ls = make_least_squares(200, 20, 0.01, 14);
  const std::vector<double> theta0(20, 0.0);
  RunOptions options;
  options.master_seed = 99;
  for (OptimizerId id : {OptimizerId::kMezo, OptimizerId::kMezoSvrg,
                         OptimizerId::kZoSvrg, OptimizerId::kFoSgd}) {
    const RunResult a = run(ls, theta0, spec_of(id, 8), {50, 0}, options);
    const RunResult b = run(ls, theta0, spec_of(id, 8), {50, 0}, options);
    EXPECT_TRUE(bitwise_equal(a.theta.view(), b.theta.view())) << to_string(id);
    ASSERT_EQ(a.records.size(), b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
      EXPECT_EQ(a.records[i].batch_loss, b.records[i].batch_loss);
      EXPECT_EQ(a.records[i].train_loss, b.records[i].train_loss);
    }
  }
}

TEST(Run, ThreadCountDoesNotChangeTheTrajectory) {
  const auto ls = make_least_squares(300, 10, 0.01, 15);
  const std::vector<double> theta0(10, 0.0);
  RunOptions one, four;
  one.master_seed = four.master_seed = 5;
  four.threads = 4;
  const auto spec = spec_of(OptimizerId::kMezoSvrg, 32);
  const RunResult a = run(ls, theta0, spec, {40, 0}, one);
  const RunResult b = run(ls, theta0, spec, {40, 0}, four);
  EXPECT_TRUE(bitwise_equal(a.theta.view(), b.theta.view()));
}

TEST(Run, RecordsAreMonotoneAndEvaluatedOnSchedule) {
  const auto ls = make_least_squares(100, 10, 0.01, 16);
  const std::vector<double> theta0(10, 0.0);
  RunOptions options;
  options.eval_every = 4;
  const RunResult r =
      run(ls, theta0, spec_of(OptimizerId::kMezoSvrg, 8), {10, 0}, options);
  ASSERT_EQ(r.records.size(), 10u);
  for (std::size_t i = 0; i < 10; ++i) {
    EXPECT_EQ(r.records[i].step, i);
    if (i > 0) {
      EXPECT_GT(r.records[i].cumulative_queries,
                r.records[i - 1].cumulative_queries);
    }
    const bool evaluated = (i + 1) % 4 == 0 || i == 9;
    EXPECT_EQ(r.records[i].train_loss.has_value(), evaluated) << i;
    EXPECT_EQ(r.records[i].gap.has_value(), evaluated) << i;
  }
  EXPECT_NEAR(*r.records.back().gap,
              *r.records.back().train_loss - ls.f_star(), 1e-15);
}

TEST(Run, NonFiniteLossEndsTheRunAsDiverged) {
  NanObjective obj(3);
  const std::vector<double> theta0(3, 0.0);
  const RunResult r = run(obj, theta0, spec_of(OptimizerId::kMezo, 2), {5, 0});
  EXPECT_EQ(r.status, RunStatus::kDiverged);
  EXPECT_EQ(r.steps, 0u);
  EXPECT_FALSE(r.failure_reason.empty());
}

TEST(Run, ExplodingLossEndsTheRunAsDiverged) {
  const auto ls = make_least_squares(100, 10, 0.01, 17);
  const std::vector<double> theta0(10, 0.0);
  OptimizerSpec spec = spec_of(OptimizerId::kFoSgd, 10);
  spec.config.eta1 = 10.0;
  const RunResult r = run(ls, theta0, spec, {1000, 0});
  EXPECT_EQ(r.status, RunStatus::kDiverged);
  EXPECT_LT(r.steps, 1000u);
  EXPECT_TRUE(r.records.back().train_loss.has_value());
}

TEST(Run, ScheduledRatesNeverIncrease) {
  const auto ls = make_least_squares(100, 10, 0.01, 18);
  const std::vector<double> theta0(10, 0.0);
  OptimizerSpec spec = spec_of(OptimizerId::kMezoSvrg, 8);
  spec.config.eta1 = spec.config.eta2 = 0.2;  // large enough to oscillate
  RunOptions options;
  options.lr_schedule = LrScheduleConfig{1.05, 5.0, 4};
  const RunResult r = run(ls, theta0, spec, {400, 0}, options);
  bool annealed = false;
  for (std::size_t i = 1; i < r.records.size(); ++i) {
    EXPECT_LE(r.records[i].eta1, r.records[i - 1].eta1);
    EXPECT_LE(r.records[i].eta2, r.records[i - 1].eta2);
    annealed = annealed || r.records[i].eta1 < r.records[i - 1].eta1;
  }
  EXPECT_TRUE(annealed);
}

TEST(Run, FoSgdCountsBackwardPassesSeparately) {
  const auto ls = make_least_squares(50, 5, 0.01, 19);
  const std::vector<double> theta0(5, 0.0);
  const RunResult r = run(ls, theta0, spec_of(OptimizerId::kFoSgd, 5), {7, 0});
  EXPECT_EQ(r.total_queries, 35u);
  EXPECT_EQ(r.backward_passes, 35u);
  EXPECT_EQ(r.records.back().backward_passes, 35u);
}

TEST(Run, InvalidBudgetIsContractViolation) {
  const auto ls = make_least_squares(10, 2, 0.01, 20);
  const std::vector<double> theta0(2, 0.0);
  EXPECT_THROW(run(ls, theta0, spec_of(OptimizerId::kMezo, 2), {0, 0}),
               ContractViolation);
  const std::vector<double> wrong(3, 0.0);
  EXPECT_THROW(run(ls, wrong, spec_of(OptimizerId::kMezo, 2), {1, 0}),
               ContractViolation);
}

TEST(Run, OptimizerNamesRoundTrip) {
  for (OptimizerId id : {OptimizerId::kMezo, OptimizerId::kMezoSvrg,
                         OptimizerId::kZoSvrg, OptimizerId::kFoSgd}) {
    EXPECT_EQ(parse_optimizer(to_string(id)), id);
  }
  EXPECT_THROW(parse_optimizer("adam"), ContractViolation);
}

TEST(Run, MeasuredPeakSlotsStayWithinTheModel) {
  const std::size_t d = 300;
  const auto ls = make_least_squares(d + 20, d, 0.01, 21);
  const std::vector<double> theta0(d, 0.0);
  struct Case {
    OptimizerId id;
    const char* name;
    AccountingMode mode;
  };
  for (const Case& c : {Case{OptimizerId::kMezo, "mezo", AccountingMode::kStoreG},
                        Case{OptimizerId::kMezoSvrg, "mezo-svrg",
                             AccountingMode::kStoreG},
                        Case{OptimizerId::kMezoSvrg, "mezo-svrg",
                             AccountingMode::kRecomputeG},
                        Case{OptimizerId::kZoSvrg, "zo-svrg",
                             AccountingMode::kNaiveSvrg},
                        Case{OptimizerId::kFoSgd, "fo-sgd",
                             AccountingMode::kStoreG}}) {
    const RunResult r = run(ls, theta0, spec_of(c.id, 4), {4, 0});
    EXPECT_LE(r.peak_slots, account_memory(c.name, c.mode, d)) << c.name;
    EXPECT_GE(r.peak_slots, d) << c.name;
  }
}

}  // namespace
}  // namespace zovr
