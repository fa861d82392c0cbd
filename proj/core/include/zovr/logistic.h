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

#ifndef ZOVR_LOGISTIC_H_
#define ZOVR_LOGISTIC_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "zovr/objective.h"

namespace zovr {

// Binary logistic regression without intercept, labels in {−1, +1}:
// fᵢ(θ) = log(1 + exp(−yᵢ θ·xᵢ)).
class LogisticProblem final : public Objective {
 public:
  LogisticProblem(std::size_t n, std::size_t d, std::vector<double> x,
                  std::vector<int> labels);

  std::string name() const override { return "logistic"; }
  std::size_t num_samples() const override { return n_; }
  std::size_t dimension() const override { return d_; }
  double loss(std::span<const double> theta, std::size_t index) const override;
  bool has_gradient() const override { return true; }
  void add_gradient(std::span<const double> theta, std::size_t index,
                    double scale, std::span<double> out) const override;
  // Fraction of samples with sign(θ·xᵢ) = yᵢ.
  std::optional<double> metric(std::span<const double> theta) const override;

  std::span<const double> x() const { return x_; }
  std::span<const int> labels() const { return labels_; }
  // Unit vector separating the two class means.
  std::span<const double> direction() const { return direction_; }

 private:
  friend LogisticProblem make_logistic(std::size_t, std::size_t, double,
                                       std::uint64_t);
  double margin(std::span<const double> theta, std::size_t index) const;

  std::size_t n_;
  std::size_t d_;
  std::vector<double> x_;
  std::vector<int> labels_;
  std::vector<double> direction_;
};

// Two Gaussian classes N(±(separation/2)·u, I) around a random unit vector
// u, balanced labels alternating +1, −1.
LogisticProblem make_logistic(std::size_t n, std::size_t d, double separation,
                              std::uint64_t seed);

}  // namespace zovr

#endif  // ZOVR_LOGISTIC_H_
