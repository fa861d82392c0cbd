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


// Summaries and pass/fail comparisons over run CSVs.

#ifndef ZOVR_COMPARE_H_
#define ZOVR_COMPARE_H_

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "zovr/run_record.h"

namespace zovr {

struct LabeledRun {
  std::string label;
  CsvTable table;
};

struct RunSummary {
  std::string label;
  std::size_t rows = 0;
  std::size_t final_queries = 0;
  // Largest single-step query count in the run.
  std::size_t max_step_queries = 0;
  std::optional<double> final_loss;
  std::optional<double> final_gap;
  // Population standard deviation of train_loss over the evaluated rows in
  // the last `trailing_fraction` of the run (by row count).
  double trailing_std = 0.0;
  // The last train_loss or batch_loss is non-finite or above 10⁶ times
  // the first evaluated train_loss. Such runs stop early and are exempt
  // from query parity.
  bool diverged = false;
  // Smallest grad_norm_sq in the run, when the column is filled.
  std::optional<double> min_grad_norm_sq;
};

RunSummary summarize(const LabeledRun& run, double trailing_fraction = 0.2);

struct ComparisonReport {
  std::vector<RunSummary> runs;
  std::vector<std::string> lines;
  bool passed = true;
};

// Criteria and their run roles, in order:
//   gap               any runs; passes when ZO runs meet query parity
//   fig1a             mezo, mezo-svrg, fo-sgd
//   batch-robustness  mezo-b8, mezo-b128, mezo-svrg-b8
//   q-ablation        q2, q10
//   large-batch       anchor-n, anchor-half
//   mlp               mezo, mezo-svrg, fo-sgd
//   gradient-trend    k runs at T followed by k runs at 2T
// Throws ContractViolation for an unknown criterion or wrong run count, and
// FormatError when schemas differ.
ComparisonReport compare_runs(const std::string& criterion,
                              const std::vector<LabeledRun>& runs);

// Query parity: final cumulative queries differ by at most one step's
// worth (the larger of the two runs' biggest steps). Diverged runs pass.
bool query_parity(const RunSummary& a, const RunSummary& b);

// Long-form loss-vs-query curves: label,cumulative_queries,train_loss.
void write_curves(std::ostream& out, const std::vector<LabeledRun>& runs);

}  // namespace zovr

#endif  // ZOVR_COMPARE_H_
