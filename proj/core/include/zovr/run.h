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


// The optimization loop: batch sampling, seed derivation, budgets,
// learning-rate schedule, divergence detection and record emission.

#ifndef ZOVR_RUN_H_
#define ZOVR_RUN_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zovr/lr_schedule.h"
#include "zovr/objective.h"
#include "zovr/optimizers.h"
#include "zovr/param_vector.h"
#include "zovr/run_record.h"
#include "zovr/trajectory.h"

namespace zovr {

enum class OptimizerId { kMezo, kMezoSvrg, kZoSvrg, kFoSgd };

std::string to_string(OptimizerId id);
// Accepts "mezo", "mezo-svrg", "zo-svrg", "fo-sgd"; throws ContractViolation.
OptimizerId parse_optimizer(const std::string& name);

struct OptimizerSpec {
  OptimizerId id = OptimizerId::kMezo;
  MezoSvrgConfig config;
};

// A step runs only if it fits both limits; 0 disables a limit. Steps are
// indexed t = 0, 1, …, so max_steps = T runs t < T.
struct Budget {
  std::size_t max_steps = 0;
  std::size_t max_queries = 0;
};

struct LrScheduleConfig {
  double kappa = 1.05;
  double alpha = 5.0;
  std::size_t window = 1;
};

struct RunOptions {
  std::uint64_t master_seed = 0;
  // f(θ) is evaluated after every eval_every-th step and after the last.
  std::size_t eval_every = 1;
  std::optional<LrScheduleConfig> lr_schedule;
  std::size_t threads = 1;
  // Divergence: a non-finite loss, or a loss above this multiple of f(θ₀).
  double divergence_factor = 1e6;
  // Adds ‖∇f(θ)‖² at evaluation points (objectives with gradients only).
  bool track_gradient_norm = false;
  // Records MeZO / MeZO-SVRG steps when set.
  TrajectoryLog* trajectory = nullptr;
  std::function<void(const RunRecord&)> sink;
  // Called with θ after each step.
  std::function<void(std::size_t step, std::span<const double> theta)> observer;
};

enum class RunStatus { kCompleted, kDiverged, kFailed };

std::string to_string(RunStatus status);

struct RunResult {
  ParamVector theta;
  std::vector<RunRecord> records;
  RunStatus status = RunStatus::kCompleted;
  std::string failure_reason;
  std::size_t steps = 0;
  std::size_t total_queries = 0;
  std::size_t backward_passes = 0;
  double initial_loss = 0.0;
  // Highest number of tracked parameter-sized slots alive during the run,
  // counted from run entry (θ included).
  std::size_t peak_slots = 0;
};

// Queries charged for step t.
std::size_t step_cost(const OptimizerSpec& spec, std::size_t n, std::size_t t);

// Runs the optimizer from θ₀ until the budget is exhausted or a step fails.
// Identical arguments give bit-identical θ and records (timing aside).
RunResult run(const Objective& objective, std::span<const double> theta0,
              const OptimizerSpec& spec, const Budget& budget,
              const RunOptions& options = {});

}  // namespace zovr

#endif  // ZOVR_RUN_H_
