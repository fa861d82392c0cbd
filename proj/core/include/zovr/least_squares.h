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

#ifndef ZOVR_LEAST_SQUARES_H_
#define ZOVR_LEAST_SQUARES_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "zovr/objective.h"

namespace zovr {

// Linear least squares with per-sample loss fᵢ(w) = (xᵢ·w − yᵢ)², so that
// f(w) = (1/n)‖Xw − y‖². The 1/n factor only rescales learning rates
// relative to the unnormalized ‖Xw − y‖².
class LeastSquaresProblem final : public Objective {
 public:
  // X is n×d row-major. Computes w_ls and f* from the normal equations and
  // throws SingularSystem if XᵀX is singular.
  LeastSquaresProblem(std::size_t n, std::size_t d, std::vector<double> x,
                      std::vector<double> y, std::vector<double> w_star = {},
                      double noise_std = 0.0);

  std::string name() const override { return "ls"; }
  std::size_t num_samples() const override { return n_; }
  std::size_t dimension() const override { return d_; }
  double loss(std::span<const double> theta, std::size_t index) const override;
  bool has_gradient() const override { return true; }
  void add_gradient(std::span<const double> theta, std::size_t index,
                    double scale, std::span<double> out) const override;
  std::optional<double> optimal_value() const override { return f_star_; }

  std::span<const double> x() const { return x_; }
  std::span<const double> y() const { return y_; }
  std::span<const double> w_star() const { return w_star_; }
  std::span<const double> w_ls() const { return w_ls_; }
  double f_star() const { return f_star_; }
  double noise_std() const { return noise_std_; }
  // Number of times generation was retried because XᵀX was singular.
  int regenerations() const { return regenerations_; }

 private:
  friend LeastSquaresProblem make_least_squares(std::size_t, std::size_t,
                                                double, std::uint64_t);

  double residual(std::span<const double> theta, std::size_t index) const;

  std::size_t n_;
  std::size_t d_;
  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> w_star_;
  double noise_std_;
  std::vector<double> w_ls_;
  double f_star_ = 0.0;
  int regenerations_ = 0;
};

// X ~ N(0,1) entrywise, w* ~ N(0, I), y = Xw* + noise_std·ε. Reproducible in
// seed; singular draws are regenerated with a derived seed and counted.
LeastSquaresProblem make_least_squares(std::size_t n, std::size_t d,
                                       double noise_std, std::uint64_t seed);

}  // namespace zovr

#endif  // ZOVR_LEAST_SQUARES_H_
