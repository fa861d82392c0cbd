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


#ifndef ZOVR_RUN_RECORD_H_
#define ZOVR_RUN_RECORD_H_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "zovr/optimizers.h"

namespace zovr {

// One CSV row, written after the step it describes.
struct RunRecord {
  std::size_t step = 0;
  std::size_t cumulative_queries = 0;
  std::optional<double> train_loss;   // f(θ) after the step, when evaluated
  std::optional<double> eval_metric;  // e.g. accuracy, when defined
  double eta1 = 0.0;
  double eta2 = 0.0;
  StepKind kind = StepKind::kMinibatch;
  std::size_t peak_slots = 0;
  double elapsed_seconds = 0.0;
  std::size_t backward_passes = 0;  // cumulative
  double batch_loss = 0.0;          // loss estimate seen by the step
  std::optional<double> gap;        // train_loss − f*, when f* is known
  std::optional<double> grad_norm_sq;  // ‖∇f(θ)‖², when tracked
};

// Column order of the CSV. New columns are only ever appended.
const std::vector<std::string>& csv_columns();

void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const RunRecord& record);
void write_csv(std::ostream& out, const std::vector<RunRecord>& records);

// Shortest round-trip decimal form.
std::string format_double(double value);

// Parsed CSV: header plus string cells. Throws FormatError on ragged rows.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Index of `name` in the header; throws FormatError if absent.
  std::size_t column(const std::string& name) const;
  // Numeric value of a cell; nullopt for an empty cell.
  std::optional<double> number(std::size_t row, std::size_t col) const;
};

CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);

}  // namespace zovr

#endif  // ZOVR_RUN_RECORD_H_
