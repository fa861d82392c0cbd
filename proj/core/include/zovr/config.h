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


// Run configuration and its flat key=value text form.
//
// Keys match the command-line flag names without the leading dashes, e.g.
//   problem = ls
//   optimizer = mezo-svrg
//   lr1 = 1e-3
// Blank lines and lines starting with '#' are ignored.

#ifndef ZOVR_CONFIG_H_
#define ZOVR_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "zovr/memory_model.h"
#include "zovr/objective.h"
#include "zovr/run.h"

namespace zovr {

struct RunConfig {
  // Problem.
  std::string problem = "ls";  // ls | logistic | mlp
  std::size_t n = 1000;
  std::size_t d = 100;
  double noise_std = 0.01;     // ls
  double separation = 2.0;     // logistic
  std::size_t samples = 512;   // mlp
  std::string mnist_images;    // mlp; empty selects the synthetic digits
  std::string mnist_labels;
  std::uint64_t problem_seed = 1;

  // Optimizer and loop.
  OptimizerSpec optimizer{OptimizerId::kMezoSvrg, {}};
  std::uint64_t seed = 0;  // master seed
  Budget budget{0, 0};
  std::size_t eval_every = 1;
  bool lr_schedule = false;
  // window = 0 resolves to one epoch, ⌈n / b⌉ steps.
  LrScheduleConfig schedule{1.05, 5.0, 0};
  AccountingMode accounting = AccountingMode::kStoreG;
  bool track_gradient_norm = false;
  std::size_t threads = 1;

  // Outputs; empty means not written.
  std::string out;
  std::string traj_out;
  std::string theta0_out;
  std::string checkpoint_out;

  // Throws ContractViolation for an unknown key or an unparsable value.
  void set(const std::string& key, const std::string& value);
  // Every key with its current value, in a fixed order.
  std::vector<std::pair<std::string, std::string>> entries() const;
};

// Applies each key=value line of `text` to `config`.
void apply_config_text(RunConfig& config, std::istream& text);
void apply_config_file(RunConfig& config, const std::string& path);
void write_config(std::ostream& out, const RunConfig& config);

// Builds the objective named by the config. For "mlp", n and d are taken
// from the dataset rather than the config.
std::unique_ptr<Objective> build_objective(const RunConfig& config);

}  // namespace zovr

#endif  // ZOVR_CONFIG_H_
