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


// Running configured experiments, alone or as named presets.

#ifndef ZOVR_PRESETS_H_
#define ZOVR_PRESETS_H_

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "zovr/config.h"
#include "zovr/objective.h"
#include "zovr/run.h"
#include "zovr/trajectory.h"

namespace zovr {

struct RunOutcome {
  RunConfig config;
  RunResult result;
  std::size_t n = 0;
  std::size_t d = 0;
  std::vector<double> theta0;
};

// Builds the objective and θ₀, runs, and writes whichever of out, traj_out,
// theta0_out and checkpoint_out are set. θ₀ is the objective's documented
// initial point for problem_seed.
RunOutcome execute_run(const RunConfig& config);
// Same, on an objective that is already built.
RunOutcome execute_run(const RunConfig& config, const Objective& objective);

struct PresetRun {
  std::string label;
  RunConfig config;
};

struct Preset {
  std::string name;
  std::string description;
  // Criterion understood by compare_runs, with runs in its role order.
  std::string criterion;
  std::vector<PresetRun> runs;
};

std::vector<std::string> preset_names();
// Throws ContractViolation for an unknown name.
Preset make_preset(const std::string& name);

// Steps t = 0, 1, … that fit in `max_queries`.
std::size_t steps_within(const OptimizerSpec& spec, std::size_t n,
                         std::size_t max_queries);

}  // namespace zovr

#endif  // ZOVR_PRESETS_H_
