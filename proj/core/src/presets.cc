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


#include "zovr/presets.h"

#include <cmath>
#include <fstream>

#include "zovr/checkpoint.h"
#include "zovr/errors.h"
#include "zovr/run_record.h"

namespace zovr {
namespace {

RunConfig ls_base() {
  RunConfig c;
  c.problem = "ls";
  c.n = 1000;
  c.d = 100;
  c.noise_std = 0.01;
  c.problem_seed = 1;
  c.seed = 7;
  c.optimizer.config.spsa.mu = 1e-3;
  c.eval_every = 50;
  return c;
}

RunConfig mezo(RunConfig c, std::size_t b, double eta) {
  c.optimizer.id = OptimizerId::kMezo;
  c.optimizer.config.b = b;
  c.optimizer.config.eta1 = eta;
  return c;
}

RunConfig mezo_svrg(RunConfig c, std::size_t b, double eta1, double eta2,
                    std::size_t q) {
  c.optimizer.id = OptimizerId::kMezoSvrg;
  c.optimizer.config.b = b;
  c.optimizer.config.eta1 = eta1;
  c.optimizer.config.eta2 = eta2;
  c.optimizer.config.q = q;
  return c;
}

RunConfig fo_sgd(RunConfig c, std::size_t b, double eta) {
  c.optimizer.id = OptimizerId::kFoSgd;
  c.optimizer.config.b = b;
  c.optimizer.config.eta1 = eta;
  return c;
}

RunConfig with_queries(RunConfig c, std::size_t queries) {
  c.budget = {0, queries};
  return c;
}

void write_outputs(const RunConfig& config, const RunOutcome& outcome,
                   const TrajectoryLog* log) {
  if (!config.out.empty()) {
    std::ofstream out(config.out, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + config.out);
    write_csv(out, outcome.result.records);
  }
  if (log != nullptr && !config.traj_out.empty()) save(*log, config.traj_out);
  if (!config.theta0_out.empty()) {
    save_parameters(config.theta0_out, outcome.theta0);
  }
  if (!config.checkpoint_out.empty()) {
    save_parameters(config.checkpoint_out, outcome.result.theta.view());
  }
}

}  // namespace

RunOutcome execute_run(const RunConfig& config) {
  const std::unique_ptr<Objective> objective = build_objective(config);
  return execute_run(config, *objective);
}

RunOutcome execute_run(const RunConfig& config, const Objective& objective) {
  RunOutcome outcome;
  outcome.config = config;
  outcome.n = objective.num_samples();
  outcome.d = objective.dimension();
  outcome.theta0 = objective.initial_parameters(config.problem_seed);

  RunOptions options;
  options.master_seed = config.seed;
  options.eval_every = config.eval_every;
  options.threads = config.threads;
  options.track_gradient_norm = config.track_gradient_norm;
  if (config.lr_schedule) {
    LrScheduleConfig schedule = config.schedule;
    if (schedule.window == 0) {
      const std::size_t b = config.optimizer.config.b;
      schedule.window = (outcome.n + b - 1) / b;
    }
    options.lr_schedule = schedule;
  }
  TrajectoryLog log;
  if (!config.traj_out.empty()) options.trajectory = &log;
  outcome.result =
      run(objective, outcome.theta0, config.optimizer, config.budget, options);
  write_outputs(config, outcome, options.trajectory);
  return outcome;
}

std::size_t steps_within(const OptimizerSpec& spec, std::size_t n,
                         std::size_t max_queries) {
  std::size_t used = 0;
  std::size_t t = 0;
  while (used + step_cost(spec, n, t) <= max_queries) {
    used += step_cost(spec, n, t);
    ++t;
  }
  return t;
}

std::vector<std::string> preset_names() {
  return {"fig1a", "batch-robustness", "q-ablation",
          "large-batch", "mlp", "gradient-trend"};
}

Preset make_preset(const std::string& name) {
  Preset preset;
  preset.name = name;
  preset.criterion = name;
  const RunConfig base = ls_base();
  if (name == "fig1a") {
    constexpr std::size_t kQueries = 2'000'000;
    preset.description =
        "LS n=1000 d=100: MeZO vs MeZO-SVRG at 2e6 queries, FO-SGD at the "
        "MeZO-SVRG step count";
    const RunConfig svrg =
        with_queries(mezo_svrg(base, 32, 1e-3, 1e-4, 2), kQueries);
    RunConfig fo = fo_sgd(base, 32, 1e-3);
    fo.budget = {steps_within(svrg.optimizer, base.n, kQueries), 0};
    preset.runs = {{"mezo", with_queries(mezo(base, 32, 1e-3), kQueries)},
                   {"mezo-svrg", svrg},
                   {"fo-sgd", fo}};
  } else if (name == "batch-robustness") {
    constexpr std::size_t kQueries = 2'000'000;
    preset.description =
        "LS: trailing-window loss deviation of MeZO at b=8 and b=128 and "
        "MeZO-SVRG at b=8, equal queries";
    RunConfig c = base;
    c.eval_every = 10;
    preset.runs = {
        {"mezo-b8", with_queries(mezo(c, 8, 1e-3), kQueries)},
        {"mezo-b128", with_queries(mezo(c, 128, 1e-3), kQueries)},
        {"mezo-svrg-b8",
         with_queries(mezo_svrg(c, 8, 1e-3, 1e-4, 2), kQueries)}};
  } else if (name == "q-ablation") {
    RunConfig q2 = mezo_svrg(base, 64, 1e-4, 1e-6, 2);
    // Query cost of 3500 steps at q = 2.
    std::size_t queries = 0;
    for (std::size_t t = 0; t < 3500; ++t) {
      queries += step_cost(q2.optimizer, base.n, t);
    }
    preset.description = "LS: MeZO-SVRG with q=2 vs q=10 at equal queries";
    preset.runs = {
        {"q2", with_queries(q2, queries)},
        {"q10", with_queries(mezo_svrg(base, 64, 1e-4, 1e-6, 10), queries)}};
  } else if (name == "large-batch") {
    constexpr std::size_t kQueries = 20'000'000;
    preset.description =
        "LS: MeZO-SVRG with anchor batch n vs n/2 at equal queries";
    RunConfig full = with_queries(mezo_svrg(base, 32, 1e-3, 1e-4, 2), kQueries);
    full.eval_every = 500;
    RunConfig half = full;
    half.optimizer.config.anchor_batch = base.n / 2;
    preset.runs = {{"anchor-n", full}, {"anchor-half", half}};
  } else if (name == "mlp") {
    constexpr std::size_t kQueries = 500'000;
    preset.description =
        "MLP on 512 digit samples: MeZO, MeZO-SVRG, FO-SGD at equal queries";
    RunConfig c;
    c.problem = "mlp";
    c.samples = 512;
    c.problem_seed = 1;
    c.seed = 7;
    c.eval_every = 100;
    c.optimizer.config.spsa.mu = 1e-3;
    RunConfig svrg = mezo_svrg(c, 64, 1e-3, 1e-4, 2);
    svrg.optimizer.config.anchor_batch = 512;
    preset.runs = {{"mezo", with_queries(mezo(c, 64, 1e-3), kQueries)},
                   {"mezo-svrg", with_queries(svrg, kQueries)},
                   {"fo-sgd", with_queries(fo_sgd(c, 64, 1e-3), kQueries)}};
  } else if (name == "gradient-trend") {
    preset.description =
        "LS: MeZO-SVRG with mu=1/sqrt(dT), T=1000 vs T=2000, five seeds";
    for (std::size_t steps : {1000u, 2000u}) {
      for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        RunConfig c = mezo_svrg(base, 32, 1e-3, 1e-3, 2);
        c.optimizer.config.spsa.mu =
            1.0 / std::sqrt(static_cast<double>(base.d * steps));
        c.seed = seed;
        c.budget = {steps, 0};
        c.eval_every = 1;
        c.track_gradient_norm = true;
        preset.runs.push_back(
            {"T" + std::to_string(steps) + "-s" + std::to_string(seed), c});
      }
    }
  } else {
    throw ContractViolation("unknown preset '" + name + "'");
  }
  return preset;
}

}  // namespace zovr
