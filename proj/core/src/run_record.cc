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


#include "zovr/run_record.h"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "zovr/errors.h"

namespace zovr {
namespace {

void optional_cell(std::ostream& out, const std::optional<double>& value) {
  if (value) out << format_double(*value);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(std::move(cell));
      cell.clear();
    } else {
      cell.push_back(c);
    }
  }
  cells.push_back(std::move(cell));
  return cells;
}

}  // namespace

std::string format_double(double value) {
  char buffer[32];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> columns = {
      "step",           "cumulative_queries", "train_loss",
      "eval_metric",    "eta1",               "eta2",
      "kind",           "peak_slots",         "elapsed_seconds",
      "backward_passes", "batch_loss",        "gap",
      "grad_norm_sq"};
  return columns;
}

void write_csv_header(std::ostream& out) {
  const auto& columns = csv_columns();
  for (std::size_t k = 0; k < columns.size(); ++k) {
    if (k > 0) out << ',';
    out << columns[k];
  }
  out << '\n';
}

void write_csv_row(std::ostream& out, const RunRecord& r) {
  out << r.step << ',' << r.cumulative_queries << ',';
  optional_cell(out, r.train_loss);
  out << ',';
  optional_cell(out, r.eval_metric);
  out << ',' << format_double(r.eta1) << ',' << format_double(r.eta2) << ','
      << to_string(r.kind) << ',' << r.peak_slots << ','
      << format_double(r.elapsed_seconds) << ',' << r.backward_passes << ','
      << format_double(r.batch_loss) << ',';
  optional_cell(out, r.gap);
  out << ',';
  optional_cell(out, r.grad_norm_sq);
  out << '\n';
}

void write_csv(std::ostream& out, const std::vector<RunRecord>& records) {
  write_csv_header(out);
  for (const RunRecord& r : records) write_csv_row(out, r);
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t k = 0; k < header.size(); ++k) {
    if (header[k] == name) return k;
  }
  throw FormatError("CSV has no column '" + name + "'");
}

std::optional<double> CsvTable::number(std::size_t row, std::size_t col) const {
  const std::string& cell = rows.at(row).at(col);
  if (cell.empty()) return std::nullopt;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) {
    throw FormatError("CSV cell '" + cell + "' is not a number");
  }
  return value;
}

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw FormatError("CSV is empty");
  table.header = split(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = split(line);
    if (cells.size() != table.header.size()) {
      throw FormatError("CSV row " + std::to_string(table.rows.size() + 1) +
                        " has " + std::to_string(cells.size()) +
                        " cells, header has " +
                        std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(cells));
  }
  return table;
}

CsvTable read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_csv(in);
}

}  // namespace zovr
