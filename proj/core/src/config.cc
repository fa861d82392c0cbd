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


#include "zovr/config.h"

#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include "zovr/dataset.h"
#include "zovr/errors.h"
#include "zovr/least_squares.h"
#include "zovr/logistic.h"
#include "zovr/mlp.h"
#include "zovr/run_record.h"

namespace zovr {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_value(const std::string& key, const std::string& value) {
  T out{};
  const char* begin = value.data();
  const char* end = begin + value.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  if (ec != std::errc() || ptr != end) {
    throw ContractViolation("config: bad value '" + value + "' for " + key);
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ContractViolation("config: bad boolean '" + value + "' for " + key);
}

}  // namespace

void RunConfig::set(const std::string& key, const std::string& value) {
  MezoSvrgConfig& c = optimizer.config;
  if (key == "problem") {
    if (value != "ls" && value != "logistic" && value != "mlp") {
      throw ContractViolation("config: unknown problem '" + value + "'");
    }
    problem = value;
  } else if (key == "n") {
    n = parse_value<std::size_t>(key, value);
  } else if (key == "d") {
    d = parse_value<std::size_t>(key, value);
  } else if (key == "noise-std") {
    noise_std = parse_value<double>(key, value);
  } else if (key == "separation") {
    separation = parse_value<double>(key, value);
  } else if (key == "samples") {
    samples = parse_value<std::size_t>(key, value);
  } else if (key == "mnist-images") {
    mnist_images = value;
  } else if (key == "mnist-labels") {
    mnist_labels = value;
  } else if (key == "problem-seed") {
    problem_seed = parse_value<std::uint64_t>(key, value);
  } else if (key == "optimizer") {
    optimizer.id = parse_optimizer(value);
  } else if (key == "seed") {
    seed = parse_value<std::uint64_t>(key, value);
  } else if (key == "steps") {
    budget.max_steps = parse_value<std::size_t>(key, value);
  } else if (key == "query-budget") {
    budget.max_queries = parse_value<std::size_t>(key, value);
  } else if (key == "batch-size") {
    c.b = parse_value<std::size_t>(key, value);
  } else if (key == "anchor-batch") {
    c.anchor_batch = parse_value<std::size_t>(key, value);
  } else if (key == "lr1") {
    c.eta1 = parse_value<double>(key, value);
  } else if (key == "lr2") {
    c.eta2 = parse_value<double>(key, value);
  } else if (key == "mu") {
    c.spsa.mu = parse_value<double>(key, value);
  } else if (key == "p") {
    c.spsa.p = parse_value<std::size_t>(key, value);
  } else if (key == "q") {
    c.q = parse_value<std::size_t>(key, value);
  } else if (key == "sampling") {
    if (value == "with_replacement") {
      c.sampling = SamplingMode::kWithReplacement;
    } else if (value == "without_replacement") {
      c.sampling = SamplingMode::kWithoutReplacement;
    } else {
      throw ContractViolation("config: unknown sampling '" + value + "'");
    }
  } else if (key == "lr-schedule") {
    lr_schedule = parse_bool(key, value);
  } else if (key == "kappa") {
    schedule.kappa = parse_value<double>(key, value);
  } else if (key == "alpha") {
    schedule.alpha = parse_value<double>(key, value);
  } else if (key == "window") {
    schedule.window = parse_value<std::size_t>(key, value);
  } else if (key == "eval-every") {
    eval_every = parse_value<std::size_t>(key, value);
  } else if (key == "accounting-mode") {
    accounting = parse_accounting_mode(value);
  } else if (key == "track-grad-norm") {
    track_gradient_norm = parse_bool(key, value);
  } else if (key == "threads") {
    threads = parse_value<std::size_t>(key, value);
  } else if (key == "out") {
    out = value;
  } else if (key == "traj-out") {
    traj_out = value;
  } else if (key == "theta0-out") {
    theta0_out = value;
  } else if (key == "checkpoint-out") {
    checkpoint_out = value;
  } else {
    throw ContractViolation("config: unknown key '" + key + "'");
  }
}

std::vector<std::pair<std::string, std::string>> RunConfig::entries() const {
  const MezoSvrgConfig& c = optimizer.config;
  auto b = [](bool v) { return std::string(v ? "true" : "false"); };
  return {
      {"problem", problem},
      {"n", std::to_string(n)},
      {"d", std::to_string(d)},
      {"noise-std", format_double(noise_std)},
      {"separation", format_double(separation)},
      {"samples", std::to_string(samples)},
      {"mnist-images", mnist_images},
      {"mnist-labels", mnist_labels},
      {"problem-seed", std::to_string(problem_seed)},
      {"optimizer", to_string(optimizer.id)},
      {"seed", std::to_string(seed)},
      {"steps", std::to_string(budget.max_steps)},
      {"query-budget", std::to_string(budget.max_queries)},
      {"batch-size", std::to_string(c.b)},
      {"anchor-batch", std::to_string(c.anchor_batch)},
      {"lr1", format_double(c.eta1)},
      {"lr2", format_double(c.eta2)},
      {"mu", format_double(c.spsa.mu)},
      {"p", std::to_string(c.spsa.p)},
      {"q", std::to_string(c.q)},
      {"sampling", c.sampling == SamplingMode::kWithReplacement
                       ? "with_replacement"
                       : "without_replacement"},
      {"lr-schedule", b(lr_schedule)},
      {"kappa", format_double(schedule.kappa)},
      {"alpha", format_double(schedule.alpha)},
      {"window", std::to_string(schedule.window)},
      {"eval-every", std::to_string(eval_every)},
      {"accounting-mode", to_string(accounting)},
      {"track-grad-norm", b(track_gradient_norm)},
      {"threads", std::to_string(threads)},
      {"out", out},
      {"traj-out", traj_out},
      {"theta0-out", theta0_out},
      {"checkpoint-out", checkpoint_out},
  };
}

void apply_config_text(RunConfig& config, std::istream& text) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(text, line)) {
    ++number;
    // '#' opens a comment at line start or after whitespace.
    for (std::size_t i = 0; i < line.size(); ++i) {
      const bool after_space =
          i == 0 || std::isspace(static_cast<unsigned char>(line[i - 1]));
      if (line[i] == '#' && after_space) {
        line.resize(i);
        break;
      }
    }
    const std::string content = trim(line);
    if (content.empty() || content[0] == '#') continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos) {
      throw ContractViolation("config line " + std::to_string(number) +
                              ": expected key = value");
    }
    config.set(trim(content.substr(0, eq)), trim(content.substr(eq + 1)));
  }
}

void apply_config_file(RunConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  apply_config_text(config, in);
}

void write_config(std::ostream& out, const RunConfig& config) {
  for (const auto& [key, value] : config.entries()) {
    out << key << " = " << value << '\n';
  }
}

std::unique_ptr<Objective> build_objective(const RunConfig& config) {
  if (config.problem == "ls") {
    return std::make_unique<LeastSquaresProblem>(make_least_squares(
        config.n, config.d, config.noise_std, config.problem_seed));
  }
  if (config.problem == "logistic") {
    return std::make_unique<LogisticProblem>(make_logistic(
        config.n, config.d, config.separation, config.problem_seed));
  }
  if (config.problem == "mlp") {
    Dataset data =
        config.mnist_images.empty()
            ? make_synthetic_digits(config.samples, 28, 28, 10,
                                    config.problem_seed)
            : load_idx(config.mnist_images, config.mnist_labels,
                       config.samples);
    return std::make_unique<Mlp2Problem>(
        make_mlp2(std::move(data), config.problem_seed));
  }
  throw ContractViolation("unknown problem '" + config.problem + "'");
}

}  // namespace zovr
