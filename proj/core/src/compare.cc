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


#include "zovr/compare.h"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "zovr/errors.h"

namespace zovr {
namespace {

std::string fmt(std::optional<double> v) {
  return v ? format_double(*v) : std::string("n/a");
}

void expect_count(const std::vector<LabeledRun>& runs, std::size_t count,
                  const std::string& criterion) {
  require(runs.size() == count, criterion + " expects " +
                                    std::to_string(count) + " runs, got " +
                                    std::to_string(runs.size()));
}

double value_or_inf(std::optional<double> v) {
  return v ? *v : std::numeric_limits<double>::infinity();
}

void check(ComparisonReport& report, bool ok, const std::string& text) {
  report.lines.push_back((ok ? "PASS " : "FAIL ") + text);
  if (!ok) report.passed = false;
}

}  // namespace

RunSummary summarize(const LabeledRun& run, double trailing_fraction) {
  const CsvTable& t = run.table;
  RunSummary s;
  s.label = run.label;
  s.rows = t.rows.size();
  if (s.rows == 0) return s;
  const std::size_t c_queries = t.column("cumulative_queries");
  const std::size_t c_loss = t.column("train_loss");
  const std::size_t c_gap = t.column("gap");
  std::size_t previous = 0;
  for (std::size_t r = 0; r < s.rows; ++r) {
    const auto q = static_cast<std::size_t>(t.number(r, c_queries).value_or(0));
    s.max_step_queries = std::max(s.max_step_queries, q - previous);
    previous = q;
  }
  s.final_queries = previous;
  s.final_loss = t.number(s.rows - 1, c_loss);
  std::optional<double> first_loss;
  std::optional<double> last_loss;
  for (std::size_t r = 0; r < s.rows; ++r) {
    if (auto v = t.number(r, c_loss)) {
      if (!first_loss) first_loss = v;
      last_loss = v;
    }
  }
  const std::optional<double> last_batch =
      t.number(s.rows - 1, t.column("batch_loss"));
  for (const std::optional<double>& v : {last_loss, last_batch}) {
    if (!v) continue;
    if (!std::isfinite(*v) || (first_loss && std::isfinite(*first_loss) &&
                               *v > 1e6 * std::abs(*first_loss))) {
      s.diverged = true;
    }
  }
  s.final_gap = t.number(s.rows - 1, c_gap);

  const auto first = static_cast<std::size_t>(
      std::floor(static_cast<double>(s.rows) * (1.0 - trailing_fraction)));
  std::vector<double> window;
  for (std::size_t r = std::min(first, s.rows - 1); r < s.rows; ++r) {
    if (auto v = t.number(r, c_loss)) window.push_back(*v);
  }
  if (!window.empty()) {
    double mean = 0.0;
    for (double v : window) mean += v;
    mean /= static_cast<double>(window.size());
    double var = 0.0;
    for (double v : window) var += (v - mean) * (v - mean);
    s.trailing_std = std::sqrt(var / static_cast<double>(window.size()));
    if (!std::isfinite(s.trailing_std)) {
      s.trailing_std = std::numeric_limits<double>::infinity();
    }
  }

  const auto& header = t.header;
  if (std::find(header.begin(), header.end(), "grad_norm_sq") != header.end()) {
    const std::size_t c_grad = t.column("grad_norm_sq");
    for (std::size_t r = 0; r < s.rows; ++r) {
      if (auto v = t.number(r, c_grad)) {
        s.min_grad_norm_sq = s.min_grad_norm_sq ? std::min(*s.min_grad_norm_sq, *v)
                                                : *v;
      }
    }
  }
  return s;
}

bool query_parity(const RunSummary& a, const RunSummary& b) {
  if (a.diverged || b.diverged) return true;
  const std::size_t diff = a.final_queries > b.final_queries
                               ? a.final_queries - b.final_queries
                               : b.final_queries - a.final_queries;
  return diff <= std::max(a.max_step_queries, b.max_step_queries);
}

ComparisonReport compare_runs(const std::string& criterion,
                              const std::vector<LabeledRun>& runs) {
  require(!runs.empty(), "compare: no runs given");
  for (const LabeledRun& r : runs) {
    if (r.table.header != runs.front().table.header) {
      throw FormatError("compare: " + r.label + " has a different CSV schema");
    }
  }
  ComparisonReport report;
  for (const LabeledRun& r : runs) report.runs.push_back(summarize(r));
  for (const RunSummary& s : report.runs) {
    report.lines.push_back(s.label + ": rows=" + std::to_string(s.rows) +
                           " queries=" + std::to_string(s.final_queries) +
                           " final_loss=" + fmt(s.final_loss) +
                           " final_gap=" + fmt(s.final_gap) +
                           " trailing_std=" + format_double(s.trailing_std) +
                           (s.diverged ? " diverged" : ""));
  }
  const auto& S = report.runs;
  auto parity = [&](std::size_t i, std::size_t j) {
    check(report, query_parity(S[i], S[j]),
          "query parity " + S[i].label + " vs " + S[j].label + " (" +
              std::to_string(S[i].final_queries) + " vs " +
              std::to_string(S[j].final_queries) + ")");
  };

  if (criterion == "gap") {
    const double base = value_or_inf(S[0].final_loss);
    for (std::size_t i = 1; i < S.size(); ++i) {
      report.lines.push_back("gap " + S[i].label + " - " + S[0].label + " = " +
                             format_double(value_or_inf(S[i].final_loss) - base));
      parity(0, i);
    }
  } else if (criterion == "fig1a") {
    expect_count(runs, 3, criterion);
    parity(0, 1);
    const double mezo = value_or_inf(S[0].final_gap);
    const double svrg = value_or_inf(S[1].final_gap);
    const double fo = value_or_inf(S[2].final_gap);
    check(report, svrg <= 0.1 * mezo,
          "mezo-svrg gap " + format_double(svrg) + " <= 0.1 x mezo gap " +
              format_double(mezo));
    check(report, svrg <= 2.0 * fo,
          "mezo-svrg gap " + format_double(svrg) + " <= 2 x fo-sgd gap " +
              format_double(fo));
  } else if (criterion == "batch-robustness") {
    expect_count(runs, 3, criterion);
    parity(0, 1);
    check(report, S[0].trailing_std >= 2.0 * S[1].trailing_std,
          "mezo b=8 trailing std " + format_double(S[0].trailing_std) +
              " >= 2 x mezo b=128 trailing std " +
              format_double(S[1].trailing_std));
    check(report, S[2].trailing_std < S[0].trailing_std,
          "mezo-svrg b=8 trailing std " + format_double(S[2].trailing_std) +
              " < mezo b=8 trailing std " + format_double(S[0].trailing_std));
  } else if (criterion == "q-ablation") {
    expect_count(runs, 2, criterion);
    parity(0, 1);
    const double q2 = value_or_inf(S[0].final_loss);
    const double q10 = value_or_inf(S[1].final_loss);
    check(report, q2 <= q10,
          "q=2 final loss " + format_double(q2) + " <= q=10 final loss " +
              format_double(q10));
  } else if (criterion == "large-batch") {
    expect_count(runs, 2, criterion);
    parity(0, 1);
    const double full = value_or_inf(S[0].final_loss);
    const double half = value_or_inf(S[1].final_loss);
    const double rel = std::abs(half - full) / std::abs(full);
    check(report, rel < 0.2,
          "relative change " + format_double(rel) + " < 0.2");
  } else if (criterion == "mlp") {
    expect_count(runs, 3, criterion);
    parity(0, 1);
    parity(0, 2);
    const double mezo = value_or_inf(S[0].final_loss);
    const double svrg = value_or_inf(S[1].final_loss);
    const double fo = value_or_inf(S[2].final_loss);
    check(report, svrg <= mezo,
          "mezo-svrg loss " + format_double(svrg) + " <= mezo loss " +
              format_double(mezo));
    check(report, fo <= svrg,
          "fo-sgd loss " + format_double(fo) + " <= mezo-svrg loss " +
              format_double(svrg));
  } else if (criterion == "gradient-trend") {
    require(runs.size() >= 2 && runs.size() % 2 == 0,
            "gradient-trend expects an even number of runs");
    const std::size_t k = runs.size() / 2;
    double short_mean = 0.0;
    double long_mean = 0.0;
    for (std::size_t i = 0; i < runs.size(); ++i) {
      const double v = value_or_inf(S[i].min_grad_norm_sq);
      (i < k ? short_mean : long_mean) += v / static_cast<double>(k);
    }
    check(report, long_mean < short_mean,
          "mean final min ||grad||^2 at 2T " + format_double(long_mean) +
              " < at T " + format_double(short_mean));
  } else {
    throw ContractViolation("compare: unknown criterion '" + criterion + "'");
  }
  return report;
}

void write_curves(std::ostream& out, const std::vector<LabeledRun>& runs) {
  out << "label,cumulative_queries,train_loss\n";
  for (const LabeledRun& r : runs) {
    const std::size_t c_queries = r.table.column("cumulative_queries");
    const std::size_t c_loss = r.table.column("train_loss");
    for (const auto& row : r.table.rows) {
      if (row[c_loss].empty()) continue;
      out << r.label << ',' << row[c_queries] << ',' << row[c_loss] << '\n';
    }
  }
}

}  // namespace zovr
