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


// zovr command-line front end.
//
//   zovr run [--config FILE] [flags]     one run, or --preset NAME
//   zovr compare --criterion C a.csv …   summaries and pass/fail
//   zovr replay --traj T --theta0 P --step N --out CKPT
//   zovr verify                          built-in oracle checks
//
// Exit codes: 0 success, 1 error or failed comparison, 2 divergence.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "zovr/checkpoint.h"
#include "zovr/compare.h"
#include "zovr/config.h"
#include "zovr/memory_model.h"
#include "zovr/parallel.h"
#include "zovr/presets.h"
#include "zovr/run_record.h"
#include "zovr/trajectory.h"
#include "zovr/verify.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitDiverged = 2;

// Flags that map one-to-one onto RunConfig keys.
const std::vector<std::pair<std::string, std::string>> kRunFlags = {
    {"problem", "ls, logistic or mlp"},
    {"optimizer", "mezo, mezo-svrg, zo-svrg or fo-sgd"},
    {"steps", "maximum number of steps"},
    {"query-budget", "maximum number of queries"},
    {"batch-size", "minibatch size b"},
    {"anchor-batch", "anchor batch size (0 = n)"},
    {"lr1", "fullbatch learning rate (the only rate for mezo and fo-sgd)"},
    {"lr2", "minibatch learning rate"},
    {"mu", "perturbation scale"},
    {"p", "SPSA draws per estimate"},
    {"q", "anchor period"},
    {"kappa", "annealing threshold (enables the schedule)"},
    {"alpha", "annealing factor (enables the schedule)"},
    {"window", "schedule window in steps (0 = one epoch)"},
    {"seed", "master seed"},
    {"problem-seed", "seed of the generated problem and initial point"},
    {"n", "samples (ls, logistic)"},
    {"d", "dimension (ls, logistic)"},
    {"noise-std", "label noise (ls)"},
    {"separation", "class separation (logistic)"},
    {"samples", "dataset size (mlp)"},
    {"mnist-images", "IDX image file (mlp; default synthetic digits)"},
    {"mnist-labels", "IDX label file (mlp)"},
    {"sampling", "with_replacement or without_replacement"},
    {"eval-every", "evaluate f(theta) every k steps"},
    {"accounting-mode", "store_g, recompute_g or naive_svrg"},
    {"out", "CSV path (directory with --preset)"},
    {"traj-out", "trajectory file"},
    {"theta0-out", "initial-parameter checkpoint"},
    {"checkpoint-out", "final-parameter checkpoint"},
    {"threads", "loss-evaluation threads (default ZOVR_THREADS)"},
};

void print_report(const zovr::ComparisonReport& report) {
  for (const std::string& line : report.lines) std::cout << line << '\n';
  std::cout << (report.passed ? "RESULT PASS" : "RESULT FAIL") << '\n';
}

int run_preset(const std::string& name, const std::string& out_dir,
               std::size_t threads) {
  zovr::Preset preset = zovr::make_preset(name);
  std::cout << "preset " << preset.name << ": " << preset.description << '\n';
  if (!out_dir.empty()) std::filesystem::create_directories(out_dir);
  std::vector<zovr::LabeledRun> tables;
  for (zovr::PresetRun& entry : preset.runs) {
    entry.config.threads = threads;
    if (!out_dir.empty()) {
      entry.config.out =
          (std::filesystem::path(out_dir) / (entry.label + ".csv")).string();
    }
    const zovr::RunOutcome outcome = zovr::execute_run(entry.config);
    const zovr::RunResult& r = outcome.result;
    std::cout << "  " << entry.label << ": " << zovr::to_string(r.status)
              << " steps=" << r.steps << " queries=" << r.total_queries
              << " peak_slots=" << r.peak_slots;
    if (!r.failure_reason.empty()) std::cout << " (" << r.failure_reason << ")";
    std::cout << '\n';
    std::ostringstream csv;
    zovr::write_csv(csv, r.records);
    std::istringstream in(csv.str());
    tables.push_back({entry.label, zovr::read_csv(in)});
  }
  const zovr::ComparisonReport report =
      zovr::compare_runs(preset.criterion, tables);
  print_report(report);
  return report.passed ? kExitOk : kExitError;
}

int run_single(const zovr::RunConfig& config) {
  const zovr::RunOutcome outcome = zovr::execute_run(config);
  const zovr::RunResult& r = outcome.result;
  std::cout << "status=" << zovr::to_string(r.status) << " steps=" << r.steps
            << " queries=" << r.total_queries
            << " backward_passes=" << r.backward_passes;
  if (!r.records.empty() && r.records.back().train_loss) {
    std::cout << " final_loss=" << zovr::format_double(*r.records.back().train_loss);
  }
  std::cout << '\n';
  const std::string optimizer = zovr::to_string(config.optimizer.id);
  std::cout << "memory: measured_peak_slots=" << r.peak_slots
            << " modeled_slots("
            << zovr::to_string(config.accounting) << ")="
            << zovr::account_memory(optimizer, config.accounting, outcome.d)
            << " d=" << outcome.d << '\n';
  if (r.status == zovr::RunStatus::kDiverged) {
    std::cerr << "diverged: " << r.failure_reason << '\n';
    return kExitDiverged;
  }
  if (r.status == zovr::RunStatus::kFailed) {
    std::cerr << "failed: " << r.failure_reason << '\n';
    return kExitError;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zeroth-order optimization with variance reduction"};
  app.require_subcommand(1);

  CLI::App* run_cmd = app.add_subcommand("run", "run an optimizer or a preset");
  std::string config_path;
  std::string preset;
  bool lr_schedule = false;
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
  run_cmd->add_option("--config", config_path, "key=value configuration file");
  run_cmd->add_option("--preset", preset, "named experiment")
      ->check(CLI::IsMember(zovr::preset_names()));
  run_cmd->add_flag("--lr-schedule", lr_schedule,
                    "enable loss-feedback learning-rate annealing");
  for (const auto& [key, help] : kRunFlags) {
    options[key] = run_cmd->add_option("--" + key, values[key], help);
  }

  CLI::App* compare_cmd =
      app.add_subcommand("compare", "compare run CSVs against a criterion");
  std::string criterion = "gap";
  std::vector<std::string> csv_paths;
  std::string curves_out;
  compare_cmd->add_option("--criterion", criterion,
                          "gap, fig1a, batch-robustness, q-ablation, "
                          "large-batch, mlp or gradient-trend");
  compare_cmd->add_option("--curves", curves_out,
                          "write loss-vs-query curves to this CSV");
  compare_cmd->add_option("csv", csv_paths, "run CSVs in criterion role order")
      ->required();

  CLI::App* replay_cmd =
      app.add_subcommand("replay", "rebuild a checkpoint from a trajectory");
  std::string traj_path;
  std::string theta0_path;
  std::size_t replay_step = 0;
  std::string replay_out;
  replay_cmd->add_option("--traj", traj_path, "trajectory file")->required();
  replay_cmd->add_option("--theta0", theta0_path, "initial checkpoint")
      ->required();
  replay_cmd->add_option("--step", replay_step, "number of steps to apply")
      ->required();
  replay_cmd->add_option("--out", replay_out, "output checkpoint")->required();

  CLI::App* verify_cmd = app.add_subcommand("verify", "run the oracle suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (run_cmd->parsed()) {
      const std::size_t threads = options["threads"]->count() > 0
                                      ? std::stoul(values["threads"])
                                      : zovr::configured_threads();
      if (!preset.empty()) {
        return run_preset(preset, values["out"], threads);
      }
      zovr::RunConfig config;
      config.threads = threads;
      if (!config_path.empty()) zovr::apply_config_file(config, config_path);
      for (const auto& [key, option] : options) {
        if (option->count() > 0) config.set(key, values[key]);
      }
      if (lr_schedule || options["kappa"]->count() > 0 ||
          options["alpha"]->count() > 0) {
        config.lr_schedule = true;
      }
      if (config.budget.max_steps == 0 && config.budget.max_queries == 0) {
        throw zovr::ContractViolation("give --steps or --query-budget");
      }
      return run_single(config);
    }
    if (compare_cmd->parsed()) {
      std::vector<zovr::LabeledRun> runs;
      for (const std::string& path : csv_paths) {
        runs.push_back({std::filesystem::path(path).stem().string(),
                        zovr::read_csv_file(path)});
      }
      const zovr::ComparisonReport report = zovr::compare_runs(criterion, runs);
      print_report(report);
      if (!curves_out.empty()) {
        std::ofstream out(curves_out, std::ios::binary | std::ios::trunc);
        zovr::write_curves(out, runs);
      }
      return report.passed ? kExitOk : kExitError;
    }
    if (replay_cmd->parsed()) {
      const zovr::TrajectoryLog log = zovr::load(traj_path);
      const std::vector<double> theta0 = zovr::load_parameters(theta0_path);
      const zovr::ParamVector theta = zovr::replay(log, theta0, replay_step);
      zovr::save_parameters(replay_out, theta.view());
      std::cout << "replayed " << replay_step << " of " << log.num_steps()
                << " steps, d=" << theta.size() << '\n';
      return kExitOk;
    }
    if (verify_cmd->parsed()) {
      bool all = true;
      for (const zovr::OracleOutcome& o : zovr::run_oracle_suite()) {
        std::cout << (o.passed ? "PASS " : "FAIL ") << o.name << ": "
                  << o.detail << '\n';
        all = all && o.passed;
      }
      return all ? kExitOk : kExitError;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
