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

#include "zovr/logistic.h"

#include <cmath>
#include <utility>

#include "zovr/errors.h"
#include "zovr/rng.h"

namespace zovr {
namespace {

// log(1 + exp(t)) without overflow.
double softplus(double t) {
  return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
}

double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

}  // namespace

LogisticProblem::LogisticProblem(std::size_t n, std::size_t d,
                                 std::vector<double> x, std::vector<int> labels)
    : n_(n), d_(d), x_(std::move(x)), labels_(std::move(labels)) {
  require(n_ >= 1 && d_ >= 1, "LogisticProblem: need n, d >= 1");
  require(x_.size() == n_ * d_ && labels_.size() == n_,
          "LogisticProblem: shape mismatch");
  for (int label : labels_) {
    require(label == 1 || label == -1, "LogisticProblem: labels must be ±1");
  }
}

double LogisticProblem::margin(std::span<const double> theta,
                               std::size_t index) const {
  const double* row = x_.data() + index * d_;
  double s = 0.0;
  for (std::size_t k = 0; k < d_; ++k) s += row[k] * theta[k];
  return labels_[index] * s;
}

double LogisticProblem::loss(std::span<const double> theta,
                             std::size_t index) const {
  return softplus(-margin(theta, index));
}

void LogisticProblem::add_gradient(std::span<const double> theta,
                                   std::size_t index, double scale,
                                   std::span<double> out) const {
  const double factor =
      -scale * labels_[index] * sigmoid(-margin(theta, index));
  const double* row = x_.data() + index * d_;
  for (std::size_t k = 0; k < d_; ++k) out[k] += factor * row[k];
}

std::optional<double> LogisticProblem::metric(
    std::span<const double> theta) const {
  std::size_t correct = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    if (margin(theta, i) > 0.0) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(n_);
}

LogisticProblem make_logistic(std::size_t n, std::size_t d, double separation,
                              std::uint64_t seed) {
  require(n >= 1 && d >= 1, "make_logistic: need n, d >= 1");
  require(separation >= 0.0, "make_logistic: separation must be >= 0");
  std::vector<double> direction(d);
  NormalStream dir_stream(seed, 1);
  double norm = 0.0;
  for (double& v : direction) {
    v = dir_stream.next();
    norm += v * v;
  }
  norm = std::sqrt(norm);
  for (double& v : direction) v /= norm;

  std::vector<double> x(n * d);
  std::vector<int> labels(n);
  NormalStream noise(seed, 2);
  for (std::size_t i = 0; i < n; ++i) {
    labels[i] = (i % 2 == 0) ? 1 : -1;
    const double shift = 0.5 * separation * labels[i];
    for (std::size_t k = 0; k < d; ++k) {
      x[i * d + k] = shift * direction[k] + noise.next();
    }
  }
  LogisticProblem problem(n, d, std::move(x), std::move(labels));
  problem.direction_ = std::move(direction);
  return problem;
}

}  // namespace zovr
