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

#include "zovr/least_squares.h"

#include <utility>

#include "zovr/errors.h"
#include "zovr/normal_equations.h"
#include "zovr/rng.h"

namespace zovr {
namespace {

enum Stream : std::uint64_t { kDesign = 1, kWeights = 2, kNoise = 3 };
constexpr int kMaxRegenerations = 16;

}  // namespace

LeastSquaresProblem::LeastSquaresProblem(std::size_t n, std::size_t d,
                                         std::vector<double> x,
                                         std::vector<double> y,
                                         std::vector<double> w_star,
                                         double noise_std)
    : n_(n),
      d_(d),
      x_(std::move(x)),
      y_(std::move(y)),
      w_star_(std::move(w_star)),
      noise_std_(noise_std) {
  require(n_ >= d_ && d_ >= 1, "LeastSquaresProblem: need n >= d >= 1");
  require(x_.size() == n_ * d_ && y_.size() == n_,
          "LeastSquaresProblem: shape mismatch");
  require(w_star_.empty() || w_star_.size() == d_,
          "LeastSquaresProblem: w_star has wrong dimension");
  require(noise_std_ >= 0.0, "LeastSquaresProblem: noise_std must be >= 0");
  NormalEquationsSolution solution = solve_normal_equations(n_, d_, x_, y_);
  w_ls_ = std::move(solution.w_ls);
  f_star_ = solution.f_star;
}

double LeastSquaresProblem::residual(std::span<const double> theta,
                                     std::size_t index) const {
  const double* row = x_.data() + index * d_;
  double r = -y_[index];
  for (std::size_t k = 0; k < d_; ++k) r += row[k] * theta[k];
  return r;
}

double LeastSquaresProblem::loss(std::span<const double> theta,
                                 std::size_t index) const {
  const double r = residual(theta, index);
  return r * r;
}

void LeastSquaresProblem::add_gradient(std::span<const double> theta,
                                       std::size_t index, double scale,
                                       std::span<double> out) const {
  const double factor = 2.0 * scale * residual(theta, index);
  const double* row = x_.data() + index * d_;
  for (std::size_t k = 0; k < d_; ++k) out[k] += factor * row[k];
}

LeastSquaresProblem make_least_squares(std::size_t n, std::size_t d,
                                       double noise_std, std::uint64_t seed) {
  require(n >= d && d >= 1, "make_least_squares: need n >= d >= 1");
  require(noise_std >= 0.0, "make_least_squares: noise_std must be >= 0");
  std::uint64_t attempt_seed = seed;
  for (int attempt = 0; attempt <= kMaxRegenerations; ++attempt) {
    std::vector<double> x(n * d);
    std::vector<double> w_star(d);
    std::vector<double> y(n);
    NormalStream design(attempt_seed, kDesign);
    for (double& v : x) v = design.next();
    NormalStream weights(attempt_seed, kWeights);
    for (double& v : w_star) v = weights.next();
    NormalStream noise(attempt_seed, kNoise);
    for (std::size_t i = 0; i < n; ++i) {
      double dotp = 0.0;
      for (std::size_t k = 0; k < d; ++k) dotp += x[i * d + k] * w_star[k];
      y[i] = dotp + noise_std * noise.next();
    }
    try {
      LeastSquaresProblem problem(n, d, std::move(x), std::move(y),
                                  std::move(w_star), noise_std);
      problem.regenerations_ = attempt;
      return problem;
    } catch (const SingularSystem&) {
      attempt_seed = philox_hash(seed, 0x4C53524547454E00ULL, attempt + 1);
    }
  }
  throw SingularSystem("make_least_squares: XᵀX singular after retries");
}

}  // namespace zovr
