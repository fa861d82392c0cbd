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

#include <optional>
#include <vector>

#include <benchmark/benchmark.h>

#include "zovr/dataset.h"
#include "zovr/estimators.h"
#include "zovr/least_squares.h"
#include "zovr/minibatch.h"
#include "zovr/mlp.h"
#include "zovr/optimizers.h"
#include "zovr/trajectory.h"

namespace zovr {
namespace {

void BM_RegenerateZ(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    DenseVector z = regenerate_z({seed++, 0}, d);
    benchmark::DoNotOptimize(z.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RegenerateZ)->Arg(1 << 10)->Arg(1 << 16)->Arg(1 << 20);

void BM_PerturbInPlace(benchmark::State& state) {
  ParamVector theta(static_cast<std::size_t>(state.range(0)), 0.5);
  for (auto _ : state) {
    perturb_in_place(theta, {7, 0}, 1, 1e-3);
    perturb_in_place(theta, {7, 0}, -2, 1e-3);
    perturb_in_place(theta, {7, 0}, 1, 1e-3);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(3 * state.iterations() * state.range(0));
}
BENCHMARK(BM_PerturbInPlace)->Arg(1 << 16)->Arg(1 << 20);

void BM_SharedEstimatorLs(benchmark::State& state) {
  const auto ls = make_least_squares(1000, 100, 0.01, 1);
  ParamVector theta(100, 0.0);
  const auto b = static_cast<std::size_t>(state.range(0));
  const Minibatch batch =
      sample_minibatch(1000, b, SamplingMode::kWithoutReplacement, 3);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    GradientEstimate est = spsa_batch_shared(ls, theta, batch, {seed++, 0}, {});
    benchmark::DoNotOptimize(est.coeffs.data());
  }
  state.counters["queries"] = benchmark::Counter(
      2.0 * b, benchmark::Counter::kIsIterationInvariantRate);
}
BENCHMARK(BM_SharedEstimatorLs)->Arg(8)->Arg(32)->Arg(1000);

void BM_MezoStepLs(benchmark::State& state) {
  const auto ls = make_least_squares(1000, 100, 0.01, 1);
  ParamVector theta(100, 0.0);
  std::uint64_t t = 0;
  for (auto _ : state) {
    const Minibatch batch =
        sample_minibatch(1000, 32, SamplingMode::kWithoutReplacement, t);
    StepReport r = mezo_step(ls, theta, batch, {t, 0}, 1e-3, {});
    benchmark::DoNotOptimize(r.coeffs.data());
    ++t;
  }
}
BENCHMARK(BM_MezoStepLs);

void BM_MezoSvrgStepLs(benchmark::State& state) {
  const auto ls = make_least_squares(1000, 100, 0.01, 1);
  ParamVector theta(100, 0.0);
  MezoSvrgConfig cfg;
  cfg.q = static_cast<std::size_t>(state.range(0));
  std::optional<SvrgAnchor> anchor;
  std::uint64_t t = 0;
  for (auto _ : state) {
    const Minibatch batch =
        t % cfg.q == 0
            ? full_batch(1000)
            : sample_minibatch(1000, 32, SamplingMode::kWithoutReplacement, t);
    StepReport r = mezo_svrg_step(ls, theta, anchor, batch, {t, 0}, cfg, t);
    benchmark::DoNotOptimize(r.coeffs.data());
    ++t;
  }
}
BENCHMARK(BM_MezoSvrgStepLs)->Arg(2)->Arg(10);

void BM_MlpSampleLoss(benchmark::State& state) {
  const Mlp2Problem mlp(make_synthetic_digits(64, 28, 28, 10, 1), 1);
  const std::vector<double> theta = mlp.initial_parameters(0);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mlp.loss(theta, i));
    i = (i + 1) % 64;
  }
}
BENCHMARK(BM_MlpSampleLoss);

void BM_MlpSampleGradient(benchmark::State& state) {
  const Mlp2Problem mlp(make_synthetic_digits(64, 28, 28, 10, 1), 1);
  const std::vector<double> theta = mlp.initial_parameters(0);
  std::vector<double> g(theta.size());
  std::size_t i = 0;
  for (auto _ : state) {
    mlp.add_gradient(theta, i, 1.0, g);
    benchmark::ClobberMemory();
    i = (i + 1) % 64;
  }
}
BENCHMARK(BM_MlpSampleGradient);

void BM_TrajectoryReplay(benchmark::State& state) {
  const auto steps = static_cast<std::size_t>(state.range(0));
  const std::size_t d = 100;
  const std::vector<double> theta0(d, 0.0);
  MezoSvrgConfig cfg;
  TrajectoryLog log(make_trajectory_header(1, "mezo", cfg, 1000, theta0));
  const double coeff[] = {0.25};
  for (std::size_t t = 0; t < steps; ++t) {
    log.append_step(t, RecordKind::kMinibatch, coeff);
  }
  for (auto _ : state) {
    ParamVector theta = replay(log, theta0, steps);
    benchmark::DoNotOptimize(theta.data());
  }
}
BENCHMARK(BM_TrajectoryReplay)->Arg(1000)->Arg(10000);

}  // namespace
}  // namespace zovr

BENCHMARK_MAIN();
