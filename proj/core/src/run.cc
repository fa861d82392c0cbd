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


#include "zovr/run.h"

#include <chrono>
#include <cmath>
#include <limits>

#include "zovr/errors.h"
#include "zovr/minibatch.h"
#include "zovr/seeds.h"
#include "zovr/slot_tracker.h"

namespace zovr {
namespace {

Minibatch step_batch(const Objective& objective, const MezoSvrgConfig& cfg,
                     std::uint64_t master, std::size_t t) {
  return sample_minibatch(objective.num_samples(), cfg.b, cfg.sampling,
                          seeds::derive(master, t, seeds::Purpose::kBatch));
}

Minibatch anchor_batch(const Objective& objective, const MezoSvrgConfig& cfg,
                       std::uint64_t master, std::size_t t) {
  const std::size_t n = objective.num_samples();
  const std::size_t size = cfg.resolved_anchor_batch(n);
  if (size == n) return full_batch(n);
  return sample_minibatch(n, size, SamplingMode::kWithoutReplacement,
                          seeds::derive(master, t,
                                        seeds::Purpose::kAnchorBatch));
}

// Executes step t and fills the report. Anchors persist across calls.
class Stepper {
 public:
  Stepper(const Objective& objective, const OptimizerSpec& spec,
          std::uint64_t master, std::size_t threads)
      : objective_(objective),
        spec_(spec),
        master_(master),
        estimator_(objective, threads) {}

  StepReport step(ParamVector& theta, std::size_t t, double eta1,
                  double eta2) {
    MezoSvrgConfig cfg = spec_.config;
    cfg.eta1 = eta1;
    cfg.eta2 = eta2;
    const PerturbationSeed seed = seeds::perturbation(master_, t);
    StepReport report;
    switch (spec_.id) {
      case OptimizerId::kMezo:
        report = mezo_step(estimator_, theta,
                           step_batch(objective_, cfg, master_, t), seed,
                           eta1, cfg.spsa);
        break;
      case OptimizerId::kMezoSvrg: {
        const Minibatch batch = t % cfg.q == 0
                                    ? anchor_batch(objective_, cfg, master_, t)
                                    : step_batch(objective_, cfg, master_, t);
        report = mezo_svrg_step(estimator_, theta, svrg_anchor_, batch, seed,
                                cfg, t);
        break;
      }
      case OptimizerId::kZoSvrg: {
        std::size_t refresh_queries = 0;
        if (t % cfg.q == 0) {
          const Minibatch anchor = anchor_batch(objective_, cfg, master_, t);
          const auto anchor_seeds = seeds::per_sample(
              master_, t, anchor.indices, seeds::Purpose::kPerSampleAnchor);
          refresh_queries = zo_svrg_refresh(objective_, theta, zo_anchor_,
                                            anchor, anchor_seeds, cfg.spsa, t);
        }
        require(zo_anchor_.has_value(), "zo-svrg: missing anchor");
        const Minibatch batch = step_batch(objective_, cfg, master_, t);
        const auto sample_seeds = seeds::per_sample(master_, t, batch.indices);
        report = zo_svrg_step(objective_, theta, *zo_anchor_, batch,
                              sample_seeds, eta1, cfg.spsa);
        report.queries += refresh_queries;
        if (t % cfg.q == 0) report.kind = StepKind::kFullbatch;
        break;
      }
      case OptimizerId::kFoSgd:
        report = fo_sgd_step(objective_, theta,
                             step_batch(objective_, cfg, master_, t), eta1);
        break;
    }
    report.step = t;
    return report;
  }

 private:
  const Objective& objective_;
  const OptimizerSpec& spec_;
  std::uint64_t master_;
  ObjectiveEstimator estimator_;
  std::optional<SvrgAnchor> svrg_anchor_;
  std::optional<ZoSvrgAnchor> zo_anchor_;
};

}  // namespace

std::string to_string(OptimizerId id) {
  switch (id) {
    case OptimizerId::kMezo:
      return "mezo";
    case OptimizerId::kMezoSvrg:
      return "mezo-svrg";
    case OptimizerId::kZoSvrg:
      return "zo-svrg";
    case OptimizerId::kFoSgd:
      return "fo-sgd";
  }
  return "unknown";
}

OptimizerId parse_optimizer(const std::string& name) {
  if (name == "mezo") return OptimizerId::kMezo;
  if (name == "mezo-svrg") return OptimizerId::kMezoSvrg;
  if (name == "zo-svrg") return OptimizerId::kZoSvrg;
  if (name == "fo-sgd") return OptimizerId::kFoSgd;
  throw ContractViolation("unknown optimizer '" + name + "'");
}

std::string to_string(RunStatus status) {
  switch (status) {
    case RunStatus::kCompleted:
      return "completed";
    case RunStatus::kDiverged:
      return "diverged";
    case RunStatus::kFailed:
      return "failed";
  }
  return "unknown";
}

std::size_t step_cost(const OptimizerSpec& spec, std::size_t n, std::size_t t) {
  const MezoSvrgConfig& cfg = spec.config;
  const std::size_t p = cfg.spsa.p;
  const std::size_t anchor = cfg.resolved_anchor_batch(n);
  const bool refresh = t % cfg.q == 0;
  switch (spec.id) {
    case OptimizerId::kMezo:
      return 2 * cfg.b * p;
    case OptimizerId::kMezoSvrg:
      return refresh ? 2 * anchor * p : 4 * cfg.b * p;
    case OptimizerId::kZoSvrg:
      return 4 * cfg.b * p + (refresh ? 2 * anchor * p : 0);
    case OptimizerId::kFoSgd:
      return cfg.b;
  }
  return 0;
}

RunResult run(const Objective& objective, std::span<const double> theta0,
              const OptimizerSpec& spec, const Budget& budget,
              const RunOptions& options) {
  const std::size_t n = objective.num_samples();
  require(theta0.size() == objective.dimension(),
          "run: theta0 dimension does not match the objective");
  require(budget.max_steps > 0 || budget.max_queries > 0,
          "run: budget needs a step or query limit");
  require(options.eval_every >= 1, "run: eval_every must be >= 1");
  spec.config.validate(n);
  LrScheduleState schedule;
  if (options.lr_schedule) {
    schedule.kappa = options.lr_schedule->kappa;
    schedule.alpha = options.lr_schedule->alpha;
    schedule.window = options.lr_schedule->window;
    schedule.validate();
  }
  if (options.trajectory != nullptr) {
    *options.trajectory = TrajectoryLog(make_trajectory_header(
        options.master_seed, to_string(spec.id), spec.config, n, theta0));
  }

  const std::size_t live_at_entry = slot_tracker::live();
  slot_tracker::reset_peak();
  const auto start = std::chrono::steady_clock::now();

  RunResult result;
  result.theta = ParamVector(theta0);
  ParamVector& theta = result.theta;
  const std::optional<double> f_star = objective.optimal_value();
  result.initial_loss = objective.full_loss(theta.view());
  const double limit = options.divergence_factor * std::abs(result.initial_loss);

  Stepper stepper(objective, spec, options.master_seed, options.threads);
  double eta1 = spec.config.eta1;
  double eta2 = spec.config.eta2;

  auto fits = [&](std::size_t t) {
    if (budget.max_steps > 0 && t >= budget.max_steps) return false;
    if (budget.max_queries > 0 &&
        result.total_queries + step_cost(spec, n, t) > budget.max_queries) {
      return false;
    }
    return true;
  };

  for (std::size_t t = 0; fits(t); ++t) {
    StepReport report;
    try {
      report = stepper.step(theta, t, eta1, eta2);
    } catch (const NonFiniteLoss& e) {
      result.status = RunStatus::kDiverged;
      result.failure_reason = "step " + std::to_string(t) + ": " + e.what();
      break;
    } catch (const std::exception& e) {
      result.status = RunStatus::kFailed;
      result.failure_reason = "step " + std::to_string(t) + ": " + e.what();
      break;
    }
    result.total_queries += report.queries;
    result.backward_passes += report.backward;
    result.steps = t + 1;
    if (options.trajectory != nullptr) record(*options.trajectory, report);

    auto exceeds = [&](double value) {
      return !std::isfinite(value) || value > limit;
    };
    bool diverged = exceeds(report.loss_before) || !theta.all_finite();
    const bool last = !fits(t + 1);
    RunRecord row;
    row.step = t;
    row.cumulative_queries = result.total_queries;
    row.eta1 = eta1;
    row.eta2 = eta2;
    row.kind = report.kind;
    row.backward_passes = result.backward_passes;
    row.batch_loss = report.loss_before;
    if ((t + 1) % options.eval_every == 0 || last || diverged) {
      row.train_loss = objective.full_loss(theta.view());
      row.eval_metric = objective.metric(theta.view());
      if (f_star) row.gap = *row.train_loss - *f_star;
      if (options.track_gradient_norm && objective.has_gradient()) {
        double sq = 0.0;
        for (double g : full_gradient(objective, theta.view())) sq += g * g;
        row.grad_norm_sq = sq;
      }
      diverged = diverged || exceeds(*row.train_loss);
    }
    row.peak_slots = slot_tracker::peak() - live_at_entry;
    row.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();

    result.records.push_back(row);
    if (options.sink) options.sink(row);
    if (options.observer) options.observer(t, theta.view());
    if (diverged) {
      result.status = RunStatus::kDiverged;
      result.failure_reason = "loss diverged at step " + std::to_string(t);
      break;
    }

    if (options.lr_schedule) {
      schedule.loss_history.push_back(report.loss_before);
      if (schedule.loss_history.size() % schedule.window == 0) {
        const auto [next1, next2] = lr_schedule_update(schedule, eta1, eta2);
        if (next1 != eta1 || next2 != eta2) {
          eta1 = next1;
          eta2 = next2;
          if (options.trajectory != nullptr) {
            options.trajectory->append_lr_event(eta1, eta2);
          }
        }
      }
    }
  }
  result.peak_slots = slot_tracker::peak() - live_at_entry;
  return result;
}

}  // namespace zovr
